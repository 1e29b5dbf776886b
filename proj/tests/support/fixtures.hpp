#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "sortal/speclang.hpp"

namespace sortal::testing {

inline std::string fixture_text(const std::string& name) {
  std::ifstream in(std::string(SORTAL_FIXTURES) + "/" + name, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Workspace load_fixture(const std::string& name) { return parse(fixture_text(name)); }

}  // namespace sortal::testing
