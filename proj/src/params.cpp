#include "relmass/params.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "relmass/errors.hpp"
#include "relmass/spectrum.hpp"

namespace relmass {

PhysicalParams cp1() {
    return PhysicalParams{1.0, 10.0, 1.0, 1.0, 0.5};
}

void check_params(const PhysicalParams& p) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw InvalidParameterError(std::string(name) + " must be positive and finite");
    };
    positive(p.hbar, "hbar");
    positive(p.c, "c");
    positive(p.m0, "m0");
    positive(p.well_length, "well_length");
    if (!(p.e1_int >= 0.0) || !std::isfinite(p.e1_int))
        throw InvalidParameterError("e1_int must be non-negative and finite");
}

RegimeReport validate_params(const PhysicalParams& p, int n_max, double threshold) {
    check_params(p);
    if (n_max < 1)
        throw InvalidParameterError("n_max must be >= 1");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw InvalidParameterError("threshold must lie in (0, 1)");

    const double rest_energy = p.m0 * p.c * p.c;
    RegimeReport report;
    report.internal_ratio = p.e1_int / rest_energy;
    // <P^2> = 2 M0 E_N at level N, so <P^2>/(M0 c)^2 = 2 E_N / (M0 c^2).
    report.momentum_ratio = 2.0 * spectrum::well_energy(p, n_max) / rest_energy;

    std::ostringstream os;
    if (report.internal_ratio > threshold) {
        os.str("");
        os << "internal_ratio " << report.internal_ratio << " exceeds threshold " << threshold
           << "; first-order treatment of the internal energy is suspect";
        report.warnings.push_back(os.str());
    }
    if (report.momentum_ratio > threshold) {
        os.str("");
        os << "momentum_ratio " << report.momentum_ratio << " exceeds threshold " << threshold
           << " at level N=" << n_max << "; the nearly non-relativistic expansion is suspect";
        report.warnings.push_back(os.str());
    }
    return report;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, int line) {
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE)
        throw ConfigError("not a number: '" + text + "'", line);
    return v;
}

}  // namespace

PhysicalParams parse_params(std::istream& in) {
    static const char* kKeys[] = {"hbar", "c", "m0", "well_length", "e1_int"};
    std::map<std::string, double> values;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        if (const auto hash = s.find('#'); hash != std::string::npos)
            s.erase(hash);
        s = trim(s);
        if (s.empty())
            continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key=value, got '" + trim(raw) + "'", line);
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        bool known = false;
        for (const char* k : kKeys)
            known = known || key == k;
        if (!known)
            throw ConfigError("unknown key '" + key + "'", line);
        if (values.count(key))
            throw ConfigError("duplicate key '" + key + "'", line);
        if (val.empty())
            throw ConfigError("missing value for key '" + key + "'", line);
        values[key] = parse_number(val, line);
    }
    for (const char* k : kKeys)
        if (!values.count(k))
            throw ConfigError(std::string("missing required key '") + k + "'", 0);
    PhysicalParams p{values["hbar"], values["c"], values["m0"], values["well_length"],
                     values["e1_int"]};
    check_params(p);
    return p;
}

PhysicalParams load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open '" + path + "'", 0);
    return parse_params(in);
}

}  // namespace relmass
