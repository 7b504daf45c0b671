#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "mph/filtration.hpp"
#include "mph/presentation.hpp"

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(MPH_DATA_DIR) + "/" + name; }

inline std::string slurp(const std::string& name) {
    std::ifstream in(path(name), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline mph::MultifilteredComplex complex(const std::string& name) {
    return mph::MultifilteredComplex::parse_string(slurp(name));
}

inline mph::GradedModulePresentation pres(const std::string& name) {
    return mph::GradedModulePresentation::parse_string(slurp(name));
}

}  // namespace fixtures
