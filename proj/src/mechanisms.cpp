#include "facline/mechanisms.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace facline {

namespace {

void require_positive_k(int facility_count) {
    if (facility_count < 1) {
        throw std::invalid_argument("facility count must be at least 1");
    }
}

}  // namespace

Placement median_mechanism(const LocationProfile& profile) {
    return Placement({profile[(profile.size() - 1) / 2]});
}

Placement dictator(const LocationProfile& profile, int agent_index) {
    if (agent_index < 1 ||
        static_cast<std::size_t>(agent_index) > profile.size()) {
        throw std::invalid_argument("dictator index " +
                                    std::to_string(agent_index) +
                                    " out of range for " +
                                    std::to_string(profile.size()) + " agents");
    }
    return Placement({profile[static_cast<std::size_t>(agent_index) - 1]});
}

Placement fixed_point(double position) {
    return Placement({position});
}

Placement mean_mechanism(const LocationProfile& profile) {
    const auto& r = profile.reports();
    double sum = std::accumulate(r.begin(), r.end(), 0.0);
    return Placement({sum / static_cast<double>(r.size())});
}

RandomizedPlacement lrc(const LocationProfile& profile) {
    return RandomizedPlacement({
        {Placement({profile.leftmost()}), 0.25},
        {Placement({profile.rightmost()}), 0.25},
        {Placement({profile.center()}), 0.5},
    });
}

RandomizedPlacement blrc(const LocationProfile& profile) {
    return RandomizedPlacement({
        {Placement({0.5}), 1.0 / 3.0},
        {Placement({profile.leftmost()}), 1.0 / 6.0},
        {Placement({profile.rightmost()}), 1.0 / 6.0},
        {Placement({profile.center()}), 1.0 / 3.0},
    });
}

Placement phantom_half(const LocationProfile& profile) {
    return Placement({std::clamp(0.5, profile.leftmost(), profile.rightmost())});
}

Placement equal_spread(int facility_count) {
    require_positive_k(facility_count);
    std::vector<double> locations;
    locations.reserve(static_cast<std::size_t>(facility_count));
    const double denom = 2.0 * facility_count - 1.0;
    for (int i = 1; i <= 2 * facility_count - 1; i += 2) {
        locations.push_back(i / denom);
    }
    return Placement(std::move(locations));
}

Placement pec_even_option(int facility_count) {
    require_positive_k(facility_count);
    std::vector<double> locations;
    const double denom = 2.0 * facility_count - 1.0;
    for (int j = 0; j < facility_count; ++j) locations.push_back(2.0 * j / denom);
    return Placement(std::move(locations));
}

Placement pec_odd_option(int facility_count) {
    require_positive_k(facility_count);
    std::vector<double> locations;
    const double denom = 2.0 * facility_count - 1.0;
    for (int j = 0; j < facility_count; ++j) {
        locations.push_back((2.0 * j + 1.0) / denom);
    }
    return Placement(std::move(locations));
}

RandomizedPlacement pec(int facility_count) {
    return RandomizedPlacement({
        {pec_even_option(facility_count), 0.5},
        {pec_odd_option(facility_count), 0.5},
    });
}

Placement epec(const LocationProfile& profile, int facility_count) {
    Placement even = pec_even_option(facility_count);
    Placement odd = pec_odd_option(facility_count);
    int even_votes = 0;
    int odd_votes = 0;
    for (double r : profile.reports()) {
        double even_cost = point_cost(r, even);
        double odd_cost = point_cost(r, odd);
        if (even_cost < odd_cost) {
            ++even_votes;
        } else if (odd_cost < even_cost) {
            ++odd_votes;
        }
        // equidistant agents count for neither side
    }
    return odd_votes > even_votes ? odd : even;
}

Placement fifths(const LocationProfile& profile) {
    const std::size_t n = profile.size();
    const std::size_t low = (n + 4) / 5;       // ceil(n/5), 1-based
    const std::size_t high = (4 * n + 4) / 5;  // ceil(4n/5), 1-based
    return Placement({profile[low - 1], profile[high - 1]});
}

namespace {

struct KindName {
    MechanismKind kind;
    const char* name;
};

constexpr KindName kKindNames[] = {
    {MechanismKind::Median, "median"},
    {MechanismKind::Dictator, "dictator"},
    {MechanismKind::FixedPoint, "fixed"},
    {MechanismKind::Lrc, "lrc"},
    {MechanismKind::Blrc, "blrc"},
    {MechanismKind::PhantomHalf, "phantom-half"},
    {MechanismKind::EqualSpread, "equal-spread"},
    {MechanismKind::Pec, "pec"},
    {MechanismKind::Epec, "epec"},
    {MechanismKind::Fifths, "fifths"},
    {MechanismKind::Mean, "mean"},
};

double parse_double(std::string_view text, std::string_view what) {
    // std::from_chars for doubles is missing in some libstdc++ versions,
    // so go through strtod with an explicit full-consumption check.
    std::string buf(text);
    char* end = nullptr;
    double value = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || buf.empty()) {
        throw std::invalid_argument("bad " + std::string(what) + " value '" +
                                    buf + "'");
    }
    return value;
}

int parse_int(std::string_view text, std::string_view what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("bad " + std::string(what) + " value '" +
                                    std::string(text) + "'");
    }
    return value;
}

}  // namespace

MechanismSpec MechanismSpec::parse(std::string_view text) {
    std::string_view head = text;
    std::string_view param;
    if (auto colon = text.find(':'); colon != std::string_view::npos) {
        head = text.substr(0, colon);
        param = text.substr(colon + 1);
    }

    MechanismSpec spec;
    bool known = false;
    for (const KindName& entry : kKindNames) {
        if (head == entry.name) {
            spec.kind = entry.kind;
            known = true;
            break;
        }
    }
    if (!known) {
        throw std::invalid_argument("unknown mechanism '" + std::string(text) + "'");
    }

    if (!param.empty()) {
        auto eq = param.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("expected key=value after ':' in '" +
                                        std::string(text) + "'");
        }
        std::string_view key = param.substr(0, eq);
        std::string_view value = param.substr(eq + 1);
        if (key == "i" && spec.kind == MechanismKind::Dictator) {
            spec.agent_index = parse_int(value, "agent index");
            if (spec.agent_index < 1) {
                throw std::invalid_argument("dictator index must be at least 1");
            }
        } else if (key == "p" && spec.kind == MechanismKind::FixedPoint) {
            spec.position = parse_double(value, "position");
            if (!(spec.position >= 0.0 && spec.position <= 1.0)) {
                throw std::invalid_argument("fixed position must lie in [0,1]");
            }
        } else if (key == "k" && (spec.kind == MechanismKind::EqualSpread ||
                                  spec.kind == MechanismKind::Pec ||
                                  spec.kind == MechanismKind::Epec)) {
            spec.facility_count = parse_int(value, "facility count");
            require_positive_k(spec.facility_count);
        } else {
            throw std::invalid_argument("mechanism '" + std::string(head) +
                                        "' does not take parameter '" +
                                        std::string(key) + "'");
        }
    }
    return spec;
}

std::string MechanismSpec::to_string() const {
    switch (kind) {
        case MechanismKind::Median: return "median";
        case MechanismKind::Dictator:
            return "dictator:i=" + std::to_string(agent_index);
        case MechanismKind::FixedPoint: {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "fixed:p=%.12g", position);
            return buf;
        }
        case MechanismKind::Lrc: return "lrc";
        case MechanismKind::Blrc: return "blrc";
        case MechanismKind::PhantomHalf: return "phantom-half";
        case MechanismKind::EqualSpread:
            return "equal-spread:k=" + std::to_string(facility_count);
        case MechanismKind::Pec: return "pec:k=" + std::to_string(facility_count);
        case MechanismKind::Epec: return "epec:k=" + std::to_string(facility_count);
        case MechanismKind::Fifths: return "fifths";
        case MechanismKind::Mean: return "mean";
    }
    throw std::logic_error("unhandled mechanism kind");
}

bool MechanismSpec::randomized() const noexcept {
    return kind == MechanismKind::Lrc || kind == MechanismKind::Blrc ||
           kind == MechanismKind::Pec;
}

int MechanismSpec::facilities() const noexcept {
    switch (kind) {
        case MechanismKind::EqualSpread:
        case MechanismKind::Pec:
        case MechanismKind::Epec:
            return facility_count;
        case MechanismKind::Fifths:
            return 2;
        default:
            return 1;
    }
}

FacilityOutcome MechanismSpec::apply(const LocationProfile& profile) const {
    switch (kind) {
        case MechanismKind::Median: return median_mechanism(profile);
        case MechanismKind::Dictator: return dictator(profile, agent_index);
        case MechanismKind::FixedPoint: return fixed_point(position);
        case MechanismKind::Lrc: return lrc(profile);
        case MechanismKind::Blrc: return blrc(profile);
        case MechanismKind::PhantomHalf: return phantom_half(profile);
        case MechanismKind::EqualSpread: return equal_spread(facility_count);
        case MechanismKind::Pec: return pec(facility_count);
        case MechanismKind::Epec: return epec(profile, facility_count);
        case MechanismKind::Fifths: return fifths(profile);
        case MechanismKind::Mean: return mean_mechanism(profile);
    }
    throw std::logic_error("unhandled mechanism kind");
}

Mechanism::Mechanism(std::string name, int facility_count, bool randomized, Fn fn)
    : name_(std::move(name)),
      facility_count_(facility_count),
      randomized_(randomized),
      fn_(std::move(fn)) {
    require_positive_k(facility_count_);
    if (!fn_) throw std::invalid_argument("mechanism needs a callable");
}

Mechanism Mechanism::from_spec(const MechanismSpec& spec) {
    return Mechanism(spec.to_string(), spec.facilities(), spec.randomized(),
                     [spec](const LocationProfile& profile) {
                         return spec.apply(profile);
                     });
}

}  // namespace facline
