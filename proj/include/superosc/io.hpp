#pragma once

#include <json.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "superosc/evolution.hpp"
#include "superosc/families.hpp"
#include "superosc/metrics.hpp"

namespace superosc {

using json = nlohmann::json;

// Decimal digit count preserving a bits-wide significand through text.
inline int decimal_digits(unsigned bits) {
    return static_cast<int>(std::ceil(static_cast<double>(bits) * 0.302)) + 2;
}

inline std::string format_real(const Real& x, unsigned bits = 0) {
    return x.str(decimal_digits(bits ? bits : x.bits()));
}

inline json complex_to_json(const Complex& z, unsigned bits = 0) {
    return json::array({format_real(z.re(), bits ? bits : z.bits()),
                        format_real(z.im(), bits ? bits : z.bits())});
}

inline Real real_from_json(const json& j, unsigned bits) {
    if (j.is_string()) return Real(j.get<std::string>(), bits);
    if (j.is_number()) return Real(j.get<double>(), bits);
    throw ParseError("expected a number or decimal string");
}

inline Complex complex_from_json(const json& j, unsigned bits) {
    if (j.is_number()) return Complex(Real(j.get<double>(), bits));
    if (j.is_array() && j.size() == 2)
        return {real_from_json(j[0], bits), real_from_json(j[1], bits)};
    throw ParseError("expected a complex value as [re, im]");
}

// --------------------------------------------------------------------------
// Symbol specs: {"builtin": "k2"} or {"poly": [[re, im], ...]}, with optional
// "a" (piecewise builtins) and "h0" (declared band image bound).
// --------------------------------------------------------------------------

inline EntireSymbol symbol_from_json(const json& j, unsigned bits) {
    EntireSymbol s;
    if (j.contains("builtin")) {
        s = builtin_symbol(j["builtin"].get<std::string>(), j.value("a", 0.0));
    } else if (j.contains("poly")) {
        std::vector<Complex> coeffs;
        for (const json& c : j["poly"]) coeffs.push_back(complex_from_json(c, bits));
        s = poly_symbol(std::move(coeffs));
    } else {
        throw ParseError("symbol spec needs 'builtin' or 'poly'");
    }
    if (j.contains("h0")) s.band_image_bound = j["h0"].get<double>();
    return s;
}

inline json symbol_to_json(const EntireSymbol& s, unsigned bits) {
    json j;
    if (s.poly_coeffs) {
        json coeffs = json::array();
        for (const Complex& c : *s.poly_coeffs) coeffs.push_back(complex_to_json(c, bits));
        j["poly"] = coeffs;
    } else {
        j["builtin"] = s.label;
        if (s.real_support) j["a"] = s.real_support->second;
    }
    if (s.band_image_bound) j["h0"] = *s.band_image_bound;
    return j;
}

// --------------------------------------------------------------------------
// Measure documents: variant tag, atoms as [location, re, im] triples with
// enough decimal digits for a bit-exact Discrete round-trip, densities by
// builtin name + parameters.
// --------------------------------------------------------------------------

inline json measure_to_json(const BorelMeasure& m) {
    json j;
    j["band"] = m.band();
    j["bits"] = m.bits();
    switch (m.kind()) {
        case BorelMeasure::Kind::Discrete: {
            j["variant"] = "discrete";
            json atoms = json::array();
            for (const Atom& a : m.as_discrete().atoms)
                atoms.push_back(json::array({format_real(a.location), format_real(a.weight.re()),
                                             format_real(a.weight.im())}));
            j["atoms"] = atoms;
            break;
        }
        case BorelMeasure::Kind::Density: {
            const DensityRep& d = m.as_density();
            if (d.descriptor_json.empty())
                throw ParseError("density has no builtin descriptor; not serializable");
            j["variant"] = "density";
            j["support"] = json::array({format_real(d.lo), format_real(d.hi)});
            j["density"] = json::parse(d.descriptor_json);
            break;
        }
        case BorelMeasure::Kind::Composite: {
            const CompositeRep& c = m.as_composite();
            j["variant"] = "composite";
            j["base"] = measure_to_json(*c.base);
            j["map"] = symbol_to_json(c.map, m.bits());
            break;
        }
    }
    return j;
}

inline Integrand density_from_descriptor(const json& d, unsigned bits,
                                         std::function<std::optional<Rational>(long)>* moments) {
    std::string name = d.value("builtin", "");
    if (name == "uniform") {
        DensityInput u = uniform_density(d["value"].get<double>(), d["lo"].get<double>(),
                                         d["hi"].get<double>());
        if (moments) *moments = u.exact_moment;
        return u.fn;
    }
    if (name == "sinc_bessel") {
        double a = d["a"].get<double>();
        double delta = d["delta"].get<double>();
        Real aw(a, bits), dw(delta, bits);
        return [aw, dw](const Real& k) {
            unsigned b = k.bits();
            Real amp = exp((aw * k - 1.0) / dw) / dw;
            Real arg = sqrt((aw * aw - 1.0) * (1.0 - k * k)) / dw;
            return Complex(amp * bessel_j0(arg, b), Real(b));
        };
    }
    if (name == "collocation") {
        auto pts = std::make_shared<std::vector<Real>>();
        auto cs = std::make_shared<std::vector<Complex>>();
        for (const json& p : d["points"]) pts->push_back(real_from_json(p, bits));
        for (const json& c : d["coeffs"]) cs->push_back(complex_from_json(c, bits));
        return [pts, cs, bits](const Real& k) {
            Complex acc(bits);
            Complex mik = Complex(0.0, -1.0, bits) * Complex(k);
            for (size_t l = 0; l < pts->size(); ++l)
                acc += (*cs)[l] * exp(mik * Complex((*pts)[l]));
            return acc * 0.5;
        };
    }
    throw ParseError("unknown density builtin '" + name + "'");
}

inline BorelMeasure measure_from_json(const json& j) {
    unsigned bits = j.value("bits", 128u);
    double band = j.at("band").get<double>();
    std::string variant = j.at("variant").get<std::string>();
    if (variant == "discrete") {
        std::vector<Atom> atoms;
        for (const json& a : j.at("atoms")) {
            if (!a.is_array() || a.size() != 3) throw ParseError("atom must be [k, re, im]");
            atoms.push_back({real_from_json(a[0], bits),
                             Complex(real_from_json(a[1], bits), real_from_json(a[2], bits))});
        }
        return BorelMeasure::discrete(band, std::move(atoms));
    }
    if (variant == "density") {
        Real lo = real_from_json(j.at("support")[0], bits);
        Real hi = real_from_json(j.at("support")[1], bits);
        std::function<std::optional<Rational>(long)> moments;
        Integrand fn = density_from_descriptor(j.at("density"), bits, &moments);
        return BorelMeasure::density(band, std::move(lo), std::move(hi), std::move(fn), {},
                                     j.at("density").dump(), std::move(moments));
    }
    if (variant == "composite") {
        BorelMeasure base = measure_from_json(j.at("base"));
        EntireSymbol map = symbol_from_json(j.at("map"), bits);
        if (!map.band_image_bound) map.band_image_bound = band;
        return BorelMeasure::composite(band, std::move(base), std::move(map));
    }
    throw ParseError("unknown measure variant '" + variant + "'");
}

// --------------------------------------------------------------------------
// Family specs: {"construction": name, "a": ..., "k0": ..., "params": {...}}.
// --------------------------------------------------------------------------

struct FamilyBuild {
    std::string construction;
    std::optional<SuperoscFamily> family;
    double default_index = 0.0;
    bool has_default_index = false;
    std::optional<SincInterpolation> interp;  // collocation has no target wave
    json params;
    unsigned bits = 128;
};

inline FamilyBuild family_from_json(const json& j, unsigned bits) {
    if (!j.contains("construction")) throw ParseError("family spec needs 'construction'");
    FamilyBuild fb;
    fb.construction = j["construction"].get<std::string>();
    fb.params = j.value("params", json::object());
    fb.bits = bits;
    PrecisionPolicy policy;
    policy.base_bits = bits;
    const json& p = fb.params;

    auto need_a = [&]() -> double {
        if (!j.contains("a")) throw ParseError("family spec needs 'a'");
        return j["a"].get<double>();
    };

    if (fb.construction == "standard") {
        fb.family = standard_family(need_a(), policy);
        if (p.contains("n")) {
            fb.default_index = p["n"].get<double>();
            fb.has_default_index = true;
        }
    } else if (fb.construction == "lagrange") {
        double a = need_a();
        double k0 = j.value("k0", 1.0);
        if (p.contains("freqs")) {
            std::vector<Rational> freqs;
            for (const json& f : p["freqs"])
                freqs.push_back(rational_from_double(f.get<double>()));
            Rational aq = rational_from_double(a);
            SuperoscFamily fam;
            fam.label = "lagrange(fixed freqs)";
            fam.band = k0;
            fam.target = a;
            fam.index_kind = SuperoscFamily::IndexKind::Integer;
            fam.taylor_matched = true;
            size_t count = freqs.size();
            fam.generator = [freqs, aq, k0, policy, count](double idx) {
                if (static_cast<size_t>(idx) + 1 != count)
                    throw PreconditionViolation(
                        "fixed-frequency construction only defines index n = " +
                        std::to_string(count - 1));
                return lagrange_measure(freqs, aq, k0, policy);
            };
            fam.validate();
            fb.family = std::move(fam);
            fb.default_index = static_cast<double>(count) - 1.0;
            fb.has_default_index = true;
        } else {
            fb.family = lagrange_equispaced_family(a, policy);
            if (p.contains("n")) {
                fb.default_index = p["n"].get<double>();
                fb.has_default_index = true;
            }
        }
    } else if (fb.construction == "sinc_delta") {
        fb.family = sinc_delta_family(need_a(), bits);
        if (p.contains("delta")) {
            fb.default_index = p["delta"].get<double>();
            fb.has_default_index = true;
        }
    } else if (fb.construction == "berry") {
        double a = need_a();
        BerrySpec spec;
        spec.a = a;
        spec.k0 = j.value("k0", 1.0);
        spec.b = p.value("b", 0.0);
        std::string kname = p.value("k", "k2");
        std::string gname = p.value("g", "const1");
        spec.k = builtin_symbol(kname, a);
        spec.g = builtin_symbol(gname, a);
        fb.family = berry_family(spec, bits);
        if (p.contains("delta")) {
            fb.default_index = p["delta"].get<double>();
            fb.has_default_index = true;
        }
    } else if (fb.construction == "moment") {
        double a = need_a();
        DensityInput h;
        if (!p.contains("h")) throw ParseError("moment construction needs params.h");
        const json& hj = p["h"];
        if (hj.value("builtin", "") != "uniform")
            throw ParseError("moment construction supports the uniform builtin weight");
        h = uniform_density(hj["value"].get<double>(), hj["lo"].get<double>(),
                            hj["hi"].get<double>());
        fb.family = moment_density_family(h, a, policy);
        if (p.contains("n")) {
            fb.default_index = p["n"].get<double>();
            fb.has_default_index = true;
        }
    } else if (fb.construction == "sinc_interp") {
        std::vector<Real> pts;
        std::vector<Complex> vals;
        if (!p.contains("points") || !p.contains("values"))
            throw ParseError("sinc_interp needs params.points and params.values");
        for (const json& x : p["points"]) pts.push_back(real_from_json(x, bits));
        for (const json& v : p["values"]) vals.push_back(complex_from_json(v, bits));
        fb.interp = sinc_interpolation(pts, vals, bits);
    } else {
        throw ParseError("unknown construction '" + fb.construction + "'");
    }
    return fb;
}

// --------------------------------------------------------------------------
// Convergence report document. Computed values are decimal strings; the
// configuration (indices, weight, grid) stays numeric.
// --------------------------------------------------------------------------

inline json report_to_json(const ConvergenceReport& rep) {
    json j;
    j["label"] = rep.label;
    j["B"] = rep.weight_b;
    j["bits"] = rep.bits;
    j["indices"] = rep.indices;
    json sups = json::array();
    for (const Real& s : rep.sup_estimates) sups.push_back(format_real(s, rep.bits));
    j["sup_estimates"] = sups;
    j["grid"] = {{"r_max", rep.grid.r_max},
                 {"n_radii", rep.grid.n_radii},
                 {"n_angles", rep.grid.n_angles}};
    if (!rep.taylor_defects.empty()) {
        json table = json::array();
        for (const auto& row : rep.taylor_defects) {
            json r = json::array();
            for (const Complex& d : row) r.push_back(complex_to_json(d, rep.bits));
            table.push_back(r);
        }
        j["taylor_defects"] = table;
        j["taylor_applicable"] = rep.taylor_applicable;
    }
    if (rep.kappas) {
        j["kappas"] = json::array({rep.kappas->first, rep.kappas->second});
        json bounds = json::array();
        for (const Real& b : rep.bound_values) bounds.push_back(format_real(b, rep.bits));
        j["bound_values"] = bounds;
    }
    j["verdict"] = ConvergenceReport::verdict_name(rep.verdict);
    return j;
}

}  // namespace superosc
