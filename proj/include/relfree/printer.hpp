#pragma once

#include <string>

#include "relfree/freepoly.hpp"
#include "relfree/grassmann.hpp"
#include "relfree/normalform.hpp"

namespace relfree {

// Text forms. Polynomial output uses the same surface syntax the parser
// accepts, so parse(to_string(f)) == f.
std::string to_string(const Word& w);
std::string to_string(const MultiDegree& d);
std::string to_string(const FreePoly& f);
std::string to_string(const NormalMonomial& m);
std::string to_string(const NormalPoly& a);
std::string to_string(const GrassmannElement& g);

}  // namespace relfree
