// Classifies every registered scenario and prints the verdict.
#include <iostream>

#include "cosym/cosym.hpp"

int main() {
  for (const auto& name : cosym::scenario_names()) {
    try {
      const cosym::Scenario S = cosym::make_scenario(name);
      const auto c = cosym::classify_structure(S.chart, S.forms);
      std::cout << name << ": " << c.describe() << "\n";
    } catch (const cosym::Error& e) {
      std::cout << name << ": error [" << cosym::error_code_name(e.code())
                << "] " << e.what() << "\n";
    }
  }
  return 0;
}
