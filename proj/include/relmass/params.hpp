#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relmass {

// Physical constants and system geometry; the single source of truth every
// formula in the library draws from.  Units are whatever the caller chooses,
// as long as they are mutually consistent.
struct PhysicalParams {
    double hbar;         // reduced Planck constant
    double c;            // speed of light
    double m0;           // non-dynamical rest mass M0
    double well_length;  // width L of the infinite well
    double e1_int;       // excited internal level (ground level is 0 by convention)
};

// Desk-scale preset: c = 10 keeps relativistic corrections visible in a few
// digits while leaving every closed form exact.  Deliberately violates the
// soft momentum threshold so the warning path gets exercised.
PhysicalParams cp1();

// Throws InvalidParameterError unless all fields are positive (e1_int >= 0).
void check_params(const PhysicalParams& p);

// Outcome of the perturbative-regime check.  Violations warn rather than
// abort: the closed-form math stays well defined, only its physical validity
// degrades.
struct RegimeReport {
    double internal_ratio;  // H_int scale / (M0 c^2)
    double momentum_ratio;  // <P^2>/(M0 c)^2 at the highest used well level
    std::vector<std::string> warnings;
};

// n_max is the highest center-of-mass level in use (>= 1);
// threshold in (0,1) defines where "much less than one" stops holding.
RegimeReport validate_params(const PhysicalParams& p, int n_max, double threshold);

// Plain-text key=value config, '#' comments, one pair per line.
// Required keys: hbar, c, m0, well_length, e1_int.  Unknown or duplicate
// keys are rejected with the offending line number.
PhysicalParams parse_params(std::istream& in);
PhysicalParams load_params(const std::string& path);

}  // namespace relmass
