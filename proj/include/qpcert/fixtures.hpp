#pragma once

#include <string>
#include <vector>

#include "qpcert/problem.hpp"

namespace qpcert {

/// One expected-vs-observed fact of a fixture run. Every expectation names
/// how it was derived (hand evaluation, closed form, grid oracle, ...).
struct Fact {
  std::string label;
  std::string provenance;
  std::string expected;
  std::string observed;
  bool pass = false;
};

struct FixtureResult {
  std::string name;
  std::vector<Fact> facts;
  std::vector<std::string> notes;
  bool ok() const {
    for (const auto& f : facts)
      if (!f.pass) return false;
    return true;
  }
};

const std::vector<std::string>& fixture_names();

/// Problem data behind the problem-shaped fixtures (throws UnknownFixture
/// for the classification-only ones).
Problem fixture_problem(const std::string& name);

/// Run the scripted pipeline for one fixture and compare against its
/// expected-fact table. Throws UnknownFixture.
FixtureResult run_fixture(const std::string& name);

}  // namespace qpcert
