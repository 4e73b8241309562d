// Computes the moment body of cn(3,1) and writes its vertices as CSV.
#include <iostream>

#include "cosym/cosym.hpp"

int main(int argc, char** argv) {
  const std::string name = argc > 1 ? argv[1] : "cn(3,1)";
  try {
    const cosym::Scenario S = cosym::make_scenario(name);
    const cosym::MomentBody body = cosym::moment_body(S);
    cosym::write_moment_body_csv(std::cout, body);
    std::cerr << body.hull.vertices.size() << " vertices, "
              << body.hull.halfspaces.size() << " halfspaces\n";
  } catch (const cosym::Error& e) {
    std::cerr << "error [" << cosym::error_code_name(e.code()) << "]: "
              << e.what() << "\n";
    return 2;
  }
  return 0;
}
