#include "mgt/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>

namespace mgt::cli {

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

template <class Real>
json band_to_json(const BandMatrix<Real>& b) {
    json diags = json::array();
    for (long d = -static_cast<long>(b.lower()); d <= static_cast<long>(b.upper()); ++d) {
        json row = json::array();
        for (const auto& x : b.diagonal(d)) row.push_back(to_double(x));
        diags.push_back(std::move(row));
    }
    return json{{"M", b.size()}, {"lower", b.lower()}, {"upper", b.upper()}, {"diagonals", std::move(diags)}};
}

template json band_to_json(const BandMatrix<double>&);
template json band_to_json(const BandMatrix<HpReal>&);

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

}  // namespace

std::vector<std::string> write_report(const Report& r, const std::string& command, const RunConfig& cfg) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.out, ec);
    if (ec) throw ValidationError("cannot create output directory '" + cfg.out + "': " + ec.message());
    std::vector<std::string> written;
    auto open = [&](const fs::path& p) {
        std::ofstream f(p);
        if (!f) throw ValidationError("cannot write '" + p.string() + "'");
        written.push_back(p.string());
        return f;
    };
    if (cfg.format != OutputFormat::csv) {
        auto f = open(fs::path(cfg.out) / (command + ".json"));
        f << r.body.dump(2) << '\n';
    }
    if (cfg.format != OutputFormat::json) {
        for (const auto& t : r.tables) {
            auto f = open(fs::path(cfg.out) / (command + "_" + t.name + ".csv"));
            for (std::size_t i = 0; i < t.header.size(); ++i) f << (i ? "," : "") << csv_field(t.header[i]);
            f << '\n';
            for (const auto& row : t.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << csv_field(row[i]);
                f << '\n';
            }
        }
    }
    return written;
}

}  // namespace mgt::cli
