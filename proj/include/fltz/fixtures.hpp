#ifndef FLTZ_FIXTURES_HPP
#define FLTZ_FIXTURES_HPP

#include <string>

#include "fltz/fan.hpp"

namespace fltz {

// Named fixtures: p1, p2, pn:<n>, blp2, c3bl, p1xp1.
FanPtr fixture_fan(const std::string& name);
FanPtr projective_space_fan(int n);

// Fan file format: {"rank": n, "rays": [[...],...], "max_cones": [[...],...]}.
FanPtr fan_from_json_text(const std::string& text);
std::string fan_to_json_text(const Fan& fan);

// Resolve a fixture name first, then fall back to reading a file.
FanPtr resolve_fan(const std::string& ref);

}  // namespace fltz

#endif
