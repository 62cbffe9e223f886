#pragma once

// Seeded sampling suites for the comparison inequalities and functional
// bounds. Each check prints its worst slack; a negative slack beyond the
// tolerance is a violation and comes with a witness.

#include <cstdint>
#include <iosfwd>
#include <string_view>

namespace catgossip {

enum class PropertySuite { cat0, catk, all };

/// Throws DomainError for names other than cat0, catk, all.
PropertySuite parse_property_suite(std::string_view name);

/// Writes one line per check to `report` and returns true iff nothing was violated.
bool run_property_suite(PropertySuite suite, std::uint64_t seed, std::ostream& report);

}  // namespace catgossip
