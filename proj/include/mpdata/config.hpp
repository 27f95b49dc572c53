#pragma once

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace mpdata {

/// Everything a run needs, read from a JSON file (CLI flags may override a
/// few of these afterwards). Zero-valued sizes and steps mean "use the
/// preset default".
struct RunConfig {
    std::string preset;

    // grid overrides
    int n = 0;                       // cartesian / 1D extent
    int nlon = 0, nlat = 0, nlev = 0; // spherical extents
    double courant = 0;              // sine1d only

    std::string variant;             // gauge | standard | sphere; empty = preset default
    std::optional<bool> fct;         // empty = preset default
    int corrective_passes = 1;
    double ep = 0;                   // 0 = precision default
    std::string precision = "f64";   // f32 | f64
    std::string scheme = "mpdata";   // mpdata | upwind (first-order reference)

    int nsteps = 0;                  // 0 = one period of the preset
    int iout = 0;                    // output interval in steps, 0 = final norms only
    int npx = 1, npy = 1, npz = 1;
    int workers = 1;
    std::string output = ".";
    bool dump_fields = false;        // set from the command line

    struct Reference {
        double err0 = 0, linf = 0, tol = 0;
    };
    std::optional<Reference> reference;
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> known,
                                const std::string& where)
{
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known)
            if (item.key() == k) ok = true;
        if (!ok)
            throw std::invalid_argument("config: unknown key '" + item.key() + "'" +
                                        (where.empty() ? "" : " in " + where));
    }
}

} // namespace detail

inline void validate_config(const RunConfig& c)
{
    if (c.preset.empty())
        throw std::invalid_argument("config: 'preset' is required");
    if (c.iout < 0)
        throw std::invalid_argument("config: iout must be >= 0");
    if (c.nsteps < 0)
        throw std::invalid_argument("config: nsteps must be >= 1");
    if (c.corrective_passes < 1)
        throw std::invalid_argument("config: corrective_passes must be >= 1");
    if (c.ep < 0)
        throw std::invalid_argument("config: ep must be positive");
    if (!c.variant.empty() && c.variant != "gauge" && c.variant != "standard" &&
        c.variant != "sphere")
        throw std::invalid_argument("config: variant must be gauge, standard or sphere");
    if (c.precision != "f32" && c.precision != "f64")
        throw std::invalid_argument("config: precision must be f32 or f64");
    if (c.scheme != "mpdata" && c.scheme != "upwind")
        throw std::invalid_argument("config: scheme must be mpdata or upwind");
    if (c.npx < 1 || c.npy < 1 || c.npz < 1)
        throw std::invalid_argument("config: decomposition counts must be >= 1");
    if (c.workers < 1)
        throw std::invalid_argument("config: workers must be >= 1");
    if (c.reference && c.reference->tol <= 0)
        throw std::invalid_argument("config: reference tolerance must be > 0");
}

inline RunConfig parse_config_json(const nlohmann::json& j)
{
    detail::reject_unknown_keys(j,
                                {"preset", "grid", "variant", "fct", "corrective_passes", "ep",
                                 "precision", "scheme", "nsteps", "iout", "decomposition",
                                 "workers", "output", "reference"},
                                "");
    RunConfig c;
    c.preset = j.value("preset", std::string{});
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        detail::reject_unknown_keys(g, {"n", "nlon", "nlat", "nlev", "courant"}, "'grid'");
        c.n = g.value("n", 0);
        c.nlon = g.value("nlon", 0);
        c.nlat = g.value("nlat", 0);
        c.nlev = g.value("nlev", 0);
        c.courant = g.value("courant", 0.0);
    }
    c.variant = j.value("variant", std::string{});
    if (j.contains("fct")) c.fct = j.at("fct").get<bool>();
    c.corrective_passes = j.value("corrective_passes", 1);
    c.ep = j.value("ep", 0.0);
    c.precision = j.value("precision", std::string{"f64"});
    c.scheme = j.value("scheme", std::string{"mpdata"});
    c.nsteps = j.value("nsteps", 0);
    c.iout = j.value("iout", 0);
    if (j.contains("decomposition")) {
        const auto& d = j.at("decomposition");
        if (!d.is_array() || d.size() != 3)
            throw std::invalid_argument("config: decomposition must be [nprocx, nprocy, nprocz]");
        c.npx = d[0].get<int>();
        c.npy = d[1].get<int>();
        c.npz = d[2].get<int>();
    }
    c.workers = j.value("workers", 1);
    c.output = j.value("output", std::string{"."});
    if (j.contains("reference")) {
        const auto& r = j.at("reference");
        detail::reject_unknown_keys(r, {"err0", "linf", "tol"}, "'reference'");
        RunConfig::Reference ref;
        if (!r.contains("err0") || !r.contains("linf") || !r.contains("tol"))
            throw std::invalid_argument("config: reference needs err0, linf and tol");
        ref.err0 = r.at("err0").get<double>();
        ref.linf = r.at("linf").get<double>();
        ref.tol = r.at("tol").get<double>();
        c.reference = ref;
    }
    validate_config(c);
    return c;
}

inline RunConfig parse_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("config: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config: " + path + " is not valid JSON: " + e.what());
    }
    return parse_config_json(j);
}

} // namespace mpdata
