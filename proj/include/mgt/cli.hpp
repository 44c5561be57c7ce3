#pragma once

// Run configuration, presets and the three report-producing commands.

#include "mgt/blockview.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mgt::cli {

using nlohmann::json;

enum class OutputFormat { json, csv, both };

struct Precision {
    bool native = true;  ///< binary64
    unsigned bits = 53;

    static Precision parse(const std::string& text);  ///< "f64" or "hp<bits>"
    std::string name() const;
};

/// Parsed but still precision-independent configuration. Numeric fields of the
/// measure and parameter blocks are kept as JSON and converted per precision.
struct RunConfig {
    json measure;
    json h;
    std::optional<json> shat;
    std::optional<json> lambda;
    std::size_t nmax = 12;
    std::size_t trunc = 0;  ///< 0 means 20 + 2N
    Precision precision = Precision::parse("hp256");
    std::string out = ".";
    OutputFormat format = OutputFormat::both;
    std::size_t horizon = 0;  ///< laguerre/quadrature moment horizon; 0 derives it from nmax and trunc

    /// Degree N of h as listed (validated later).
    std::size_t order() const;
    std::size_t truncation() const { return trunc ? trunc : 20 + 2 * order(); }
    /// Throws ValidationError on any structural problem.
    void validate() const;
    json to_json() const;
    static RunConfig from_json(const json& j);
};

struct PresetInfo {
    std::string name;
    std::string description;
    json config;
};

const std::vector<PresetInfo>& presets();
RunConfig preset_config(const std::string& name);

/// Parses a JSON number or numeric string without going through binary64 for HpReal.
template <class Real>
Real parse_real(const json& j);

/// Objects assembled from a configuration at one working precision.
template <class Real>
struct Setup {
    MomentFunctional<Real> mu;
    FactoredNodes<Real> h;
    GeronimusParams<Real> params;
    SobolevMass<Real> masses;
    BilinearForm<Real> form;

    static Setup build(const RunConfig& cfg);
};

struct CsvTable {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Report {
    json body;
    std::vector<CsvTable> tables;
    int exit_code = 0;  ///< 0 ok, 3 when an invariant check failed
};

std::string format_double(double x);

Report cmd_transform(const RunConfig& cfg);
Report cmd_factorize(const RunConfig& cfg);
Report cmd_verify(const RunConfig& cfg);

/// Writes <out>/<command>.json and/or <out>/<command>_<table>.csv; returns the paths.
std::vector<std::string> write_report(const Report& r, const std::string& command, const RunConfig& cfg);

/// Band serialization {M, lower, upper, diagonals} with diagonals ordered -lower..upper.
template <class Real>
json band_to_json(const BandMatrix<Real>& b);

}  // namespace mgt::cli
