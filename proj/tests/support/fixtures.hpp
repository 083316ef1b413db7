#pragma once

#include <string>
#include <vector>

#include "eqraq/model.hpp"

namespace eqraq::testing {

// Porch story: Maria may have left with $V0.
inline std::vector<std::string> porch_sentences() {
  return {"Silvia is in the porch.",
          "Charles is in the cellar.",
          "Maria is in the porch.",
          "Charles goes from the cellar to the attic.",
          "Charles goes from the attic to the terrace.",
          "$V0 goes from the porch to the boudoir.",
          "Where is Maria"};
}

inline Problem porch_problem() {
  Problem p;
  p.persons = {"Silvia", "Charles", "Maria"};
  p.rooms = {"Porch", "Cellar", "Attic", "Terrace", "Boudoir"};
  p.variables = {"$V0"};
  p.context = {PersonIn{"Silvia", "Porch"}, PersonIn{"Charles", "Cellar"},
               PersonIn{"Maria", "Porch"}};
  p.events = {Move{"Charles", "Cellar", "Attic"}, Move{"Charles", "Attic", "Terrace"},
              Move{"$V0", "Porch", "Boudoir"}};
  p.question = {Question::Kind::Person, "Maria"};
  p.ground_truth = {{"$V0", "Silvia"}};
  return p;
}

// Attic story: Charles may be $V4.
inline std::vector<std::string> attic_sentences() {
  return {"Paul is in the attic.",
          "Maria is in the cellar.",
          "Charles is in the attic.",
          "Maria goes from the cellar to the terrace.",
          "$V4 goes from the attic to the porch.",
          "Maria goes from the terrace to the boudoir",
          "Where is Charles?"};
}

inline Problem attic_problem() {
  Problem p;
  p.persons = {"Paul", "Maria", "Charles"};
  p.rooms = {"Attic", "Cellar", "Terrace", "Porch", "Boudoir"};
  p.variables = {"$V4"};
  p.context = {PersonIn{"Paul", "Attic"}, PersonIn{"Maria", "Cellar"},
               PersonIn{"Charles", "Attic"}};
  p.events = {Move{"Maria", "Cellar", "Terrace"}, Move{"$V4", "Attic", "Porch"},
              Move{"Maria", "Terrace", "Boudoir"}};
  p.question = {Question::Kind::Person, "Charles"};
  p.ground_truth = {{"$V4", "Charles"}};
  return p;
}

// Gift story: four variables, no stated start for the gift.
inline std::vector<std::string> gift_sentences() {
  return {"Hannah and Emma are in the office.",
          "John is in the park.",
          "Bob and George are in the square.",
          "Hannah picks up the gift.",
          "$v goes from the office to the park.",
          "$w goes from the park to the bank.",
          "$x goes from the office to the square.",
          "Emma goes from the square to the bank.",
          "$y goes from the square to the bank.",
          "Where is the gift?"};
}

inline Problem gift_problem() {
  Problem p;
  p.persons = {"Hannah", "Emma", "John", "Bob", "George"};
  p.rooms = {"Office", "Park", "Square", "Bank"};
  p.objects = {"gift"};
  p.variables = {"$v", "$w", "$x", "$y"};
  p.context = {PersonIn{"Hannah", "Office"}, PersonIn{"Emma", "Office"}, PersonIn{"John", "Park"},
               PersonIn{"Bob", "Square"}, PersonIn{"George", "Square"}};
  p.events = {Pickup{"Hannah", "gift"},         Move{"$v", "Office", "Park"},
              Move{"$w", "Park", "Bank"},       Move{"$x", "Office", "Square"},
              Move{"Emma", "Square", "Bank"},   Move{"$y", "Square", "Bank"}};
  p.question = {Question::Kind::Object, "gift"};
  p.ground_truth = {{"$v", "Hannah"}, {"$w", "Hannah"}, {"$x", "Emma"}, {"$y", "Bob"}};
  return p;
}

inline Problem variable_free_problem() {
  Problem p;
  p.persons = {"Anna", "Tom"};
  p.rooms = {"Kitchen", "Garden"};
  p.context = {PersonIn{"Anna", "Kitchen"}, PersonIn{"Tom", "Garden"}};
  p.question = {Question::Kind::Person, "Anna"};
  return p;
}

}  // namespace eqraq::testing
