#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "rsz/quiver.hpp"

inline std::string fixture_text(const std::string& name) {
    std::ifstream in(std::string(FIXTURES_DIR) + "/" + name + ".quiver");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline rsz::GradedQuiver fixture(const std::string& name) {
    return rsz::parse_quiver(fixture_text(name));
}

inline const char* kAllFixtures[] = {
    "kronecker_graded", "jordan_deg_minus1", "jordan_deg2", "loop",
    "a2",               "kronecker",         "loop_plus_arrow", "cycle3",
};
