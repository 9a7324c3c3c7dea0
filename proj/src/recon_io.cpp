#include "ewi/recon.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ewi {

namespace {

using nlohmann::json;

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

template <std::size_t D>
void write_field_impl(const IndicatorField<D>& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "# ewi-field dim=" << D << " counts=";
    for (std::size_t a = 0; a < D; ++a) out << (a ? "," : "") << f.grid.counts[a];
    out << " lower=";
    for (std::size_t a = 0; a < D; ++a) out << (a ? "," : "") << fmt_num(f.grid.lower[a]);
    out << " upper=";
    for (std::size_t a = 0; a < D; ++a) out << (a ? "," : "") << fmt_num(f.grid.upper[a]);
    out << "\n";
    static const char* axes[3] = {"x", "y", "z"};
    for (std::size_t a = 0; a < D; ++a) out << (a ? "," : "") << axes[a];
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j)
            out << ",I" << (i + 1) << (j + 1) << "_re,I" << (i + 1) << (j + 1) << "_im";
    out << ",score\n";
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
        const Vec<D> z = f.grid.node(flat);
        for (std::size_t a = 0; a < D; ++a) out << (a ? "," : "") << fmt_num(z[a]);
        const auto& m = f.values[flat].matrix;
        for (std::size_t i = 0; i < D; ++i)
            for (std::size_t j = 0; j < D; ++j)
                out << "," << fmt_num(m[i][j].real()) << "," << fmt_num(m[i][j].imag());
        out << "," << fmt_num(f.values[flat].score) << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

std::vector<double> split_nums(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw SchemaError("field csv: bad number in " + what + ": " + item);
        }
    }
    return out;
}

std::string header_field(const std::string& header, const std::string& key) {
    const std::string tag = key + "=";
    const auto pos = header.find(tag);
    if (pos == std::string::npos) throw SchemaError("field csv: header missing " + key);
    const auto end = header.find(' ', pos);
    return header.substr(pos + tag.size(), end == std::string::npos ? std::string::npos
                                                                    : end - pos - tag.size());
}

template <std::size_t D>
IndicatorField<D> read_field_impl(std::ifstream& in, const std::string& header,
                                  const std::string& path) {
    IndicatorField<D> f;
    const auto counts = split_nums(header_field(header, "counts"), "counts");
    const auto lower = split_nums(header_field(header, "lower"), "lower");
    const auto upper = split_nums(header_field(header, "upper"), "upper");
    if (counts.size() != D || lower.size() != D || upper.size() != D)
        throw SchemaError("field csv: header dimension mismatch");
    for (std::size_t a = 0; a < D; ++a) {
        f.grid.counts[a] = static_cast<int>(counts[a]);
        f.grid.lower[a] = lower[a];
        f.grid.upper[a] = upper[a];
    }
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("field csv: missing column header");
    const std::size_t expect_cols = D + 2 * D * D + 1;
    f.values.reserve(f.grid.total());
    std::size_t lineno = 2;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto nums = split_nums(line, "row " + std::to_string(lineno));
        if (nums.size() != expect_cols)
            throw SchemaError("field csv: row " + std::to_string(lineno) + " has " +
                              std::to_string(nums.size()) + " columns, expected " +
                              std::to_string(expect_cols));
        IndicatorValue<D> v;
        std::size_t c = D;
        for (std::size_t i = 0; i < D; ++i)
            for (std::size_t j = 0; j < D; ++j) {
                v.matrix[i][j] = cplx(nums[c], nums[c + 1]);
                c += 2;
            }
        v.score = nums[c];
        f.values.push_back(v);
    }
    if (f.values.size() != f.grid.total())
        throw SchemaError("field csv: expected " + std::to_string(f.grid.total()) +
                          " rows, found " + std::to_string(f.values.size()) + " in " + path);
    return f;
}

template <std::size_t D>
json report_json_impl(const ReconstructionReport<D>& rep, const std::string& cfg_json) {
    json j;
    j["version"] = 1;
    j["dim"] = static_cast<int>(D);
    j["match_radius"] = rep.match_radius;
    json peaks = json::array();
    for (const auto& pk : rep.peaks) {
        json p;
        json loc = json::array();
        for (std::size_t a = 0; a < D; ++a) loc.push_back(pk.location[a]);
        p["location"] = loc;
        json mat = json::array(), ten = json::array();
        for (std::size_t i = 0; i < D; ++i) {
            json mrow = json::array(), trow = json::array();
            for (std::size_t jj = 0; jj < D; ++jj) {
                mrow.push_back(json::array({pk.matrix[i][jj].real(), pk.matrix[i][jj].imag()}));
                trow.push_back(pk.tensor_read ? pk.tensor[i][jj] : pk.matrix[i][jj].real());
            }
            mat.push_back(mrow);
            ten.push_back(trow);
        }
        p["matrix"] = mat;
        p["tensor"] = ten;
        p["score"] = pk.score;
        p["imag_norm"] = pk.tensor_read ? pk.imag_norm : imag_frob(pk.matrix);
        p["refinement_level"] = pk.refinement_level;
        peaks.push_back(p);
    }
    j["peaks"] = peaks;
    j["has_truth"] = rep.has_truth;
    json matches = json::array();
    for (const auto& m : rep.matches)
        matches.push_back({{"peak_index", m.peak_index},
                           {"truth_index", m.truth_index},
                           {"location_error", m.location_error},
                           {"tensor_rel_error", m.tensor_rel_error},
                           {"imag_norm", m.imag_norm}});
    j["matches"] = matches;
    j["unmatched_truth"] = rep.unmatched_truth;
    j["unmatched_peaks"] = rep.unmatched_peaks;
    if (rep.peak_to_sidelobe && std::isfinite(*rep.peak_to_sidelobe))
        j["peak_to_sidelobe"] = *rep.peak_to_sidelobe;
    else
        j["peak_to_sidelobe"] = nullptr;
    if (!cfg_json.empty()) {
        try {
            j["effective_config"] = json::parse(cfg_json);
        } catch (const json::parse_error&) {
            j["effective_config"] = nullptr;
        }
    } else {
        j["effective_config"] = nullptr;
    }
    return j;
}

} // namespace

void write_field_csv(const IndicatorField<2>& f, const std::string& path) {
    write_field_impl<2>(f, path);
}
void write_field_csv(const IndicatorField<3>& f, const std::string& path) {
    write_field_impl<3>(f, path);
}

AnyField read_field_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::string header;
    if (!std::getline(in, header) || header.rfind("# ewi-field", 0) != 0)
        throw SchemaError("field csv: missing '# ewi-field' header in " + path);
    const std::string dim = header_field(header, "dim");
    if (dim == "2") return read_field_impl<2>(in, header, path);
    if (dim == "3") return read_field_impl<3>(in, header, path);
    throw SchemaError("field csv: dim must be 2 or 3");
}

std::string report_to_json(const ReconstructionReport<2>& rep, const std::string& cfg) {
    return report_json_impl<2>(rep, cfg).dump(2);
}
std::string report_to_json(const ReconstructionReport<3>& rep, const std::string& cfg) {
    return report_json_impl<3>(rep, cfg).dump(2);
}

} // namespace ewi
