#include "ewi/synth.hpp"

#include <fstream>

#include "json.hpp"

namespace ewi {

namespace {

using nlohmann::json;

const json& req(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) throw SchemaError(path + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(path + ": missing key \"" + key + "\"");
    return *it;
}

double req_num(const json& obj, const char* key, const std::string& path) {
    const json& v = req(obj, key, path);
    if (!v.is_number()) throw SchemaError(path + "." + key + ": expected a number");
    return v.get<double>();
}

std::int64_t req_int(const json& obj, const char* key, const std::string& path) {
    const json& v = req(obj, key, path);
    if (!v.is_number_integer()) throw SchemaError(path + "." + key + ": expected an integer");
    return v.get<std::int64_t>();
}

const json& req_array(const json& obj, const char* key, const std::string& path) {
    const json& v = req(obj, key, path);
    if (!v.is_array()) throw SchemaError(path + "." + key + ": expected an array");
    return v;
}

template <std::size_t D>
Vec<D> parse_point(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != D)
        throw SchemaError(path + ": expected an array of " + std::to_string(D) + " numbers");
    Vec<D> p;
    for (std::size_t i = 0; i < D; ++i) {
        if (!v[i].is_number()) throw SchemaError(path + "[" + std::to_string(i) + "]: expected a number");
        p[i] = v[i].get<double>();
    }
    return p;
}

cplx parse_cplx(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw SchemaError(path + ": expected [re, im]");
    return cplx(v[0].get<double>(), v[1].get<double>());
}

template <std::size_t D>
CVec<D> parse_cvec(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != D)
        throw SchemaError(path + ": expected " + std::to_string(D) + " complex components");
    CVec<D> out;
    for (std::size_t i = 0; i < D; ++i)
        out[i] = parse_cplx(v[i], path + "[" + std::to_string(i) + "]");
    return out;
}

json cplx_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

template <std::size_t D>
json cvec_json(const CVec<D>& v) {
    json a = json::array();
    for (std::size_t i = 0; i < D; ++i) a.push_back(cplx_json(v[i]));
    return a;
}

template <std::size_t D>
json to_json_impl(const CauchyDataset<D>& ds) {
    json j;
    j["version"] = 1;
    j["dim"] = static_cast<int>(D);
    j["medium"] = {{"lambda", ds.medium.lambda}, {"mu", ds.medium.mu}};
    json nodes = json::array(), normals = json::array(), weights = json::array();
    for (const auto& p : ds.geometry.nodes) {
        json q = json::array();
        for (std::size_t i = 0; i < D; ++i) q.push_back(p[i]);
        nodes.push_back(q);
    }
    for (const auto& p : ds.geometry.normals) {
        json q = json::array();
        for (std::size_t i = 0; i < D; ++i) q.push_back(p[i]);
        normals.push_back(q);
    }
    for (double w : ds.geometry.weights) weights.push_back(w);
    j["geometry"] = {{"radius", ds.geometry.radius},
                     {"nodes", nodes},
                     {"normals", normals},
                     {"weights", weights}};
    j["ladder"] = {{"omega_star", ds.ladder.omega_star},
                   {"eta", ds.ladder.eta},
                   {"count", ds.ladder.count},
                   {"values", ds.ladder.values}};
    json recs = json::array();
    for (const auto& r : ds.records) {
        json u = json::array(), t = json::array();
        for (const auto& v : r.u) u.push_back(cvec_json<D>(v));
        for (const auto& v : r.t) t.push_back(cvec_json<D>(v));
        recs.push_back({{"omega_index", r.omega_index},
                        {"alpha", std::string(1, wave_type_char(r.alpha))},
                        {"u", u},
                        {"t", t}});
    }
    j["records"] = recs;
    if (ds.noise)
        j["noise"] = {{"level", ds.noise->level}, {"seed", ds.noise->seed}};
    else
        j["noise"] = nullptr;
    return j;
}

template <std::size_t D>
CauchyDataset<D> from_json_impl(const json& j) {
    CauchyDataset<D> ds;
    ds.medium.lambda = req_num(req(j, "medium", "$"), "lambda", "$.medium");
    ds.medium.mu = req_num(req(j, "medium", "$"), "mu", "$.medium");
    validate_medium(ds.medium, static_cast<int>(D));

    const json& geo = req(j, "geometry", "$");
    ds.geometry.radius = req_num(geo, "radius", "$.geometry");
    const json& nodes = req_array(geo, "nodes", "$.geometry");
    const json& normals = req_array(geo, "normals", "$.geometry");
    const json& weights = req_array(geo, "weights", "$.geometry");
    if (normals.size() != nodes.size() || weights.size() != nodes.size())
        throw SchemaError("$.geometry: nodes/normals/weights must have equal length");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        ds.geometry.nodes.push_back(
            parse_point<D>(nodes[i], "$.geometry.nodes[" + std::to_string(i) + "]"));
        ds.geometry.normals.push_back(
            parse_point<D>(normals[i], "$.geometry.normals[" + std::to_string(i) + "]"));
        if (!weights[i].is_number())
            throw SchemaError("$.geometry.weights[" + std::to_string(i) + "]: expected a number");
        ds.geometry.weights.push_back(weights[i].get<double>());
    }
    try {
        validate_geometry(ds.geometry);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("$.geometry: ") + e.what());
    }

    const json& lad = req(j, "ladder", "$");
    ds.ladder.omega_star = req_num(lad, "omega_star", "$.ladder");
    ds.ladder.eta = req_num(lad, "eta", "$.ladder");
    ds.ladder.count = static_cast<int>(req_int(lad, "count", "$.ladder"));
    for (const auto& v : req_array(lad, "values", "$.ladder")) {
        if (!v.is_number()) throw SchemaError("$.ladder.values: expected numbers");
        ds.ladder.values.push_back(v.get<double>());
    }
    try {
        validate_ladder(ds.ladder);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("$.ladder: ") + e.what());
    }

    const json& recs = req_array(j, "records", "$");
    if (static_cast<int>(recs.size()) != 2 * ds.ladder.count)
        throw SchemaError("$.records: expected exactly 2*count records");
    std::vector<int> seen(static_cast<std::size_t>(2 * ds.ladder.count), 0);
    const std::size_t nn = ds.geometry.nodes.size();
    for (std::size_t ri = 0; ri < recs.size(); ++ri) {
        const std::string rp = "$.records[" + std::to_string(ri) + "]";
        CauchyRecord<D> rec;
        rec.omega_index = static_cast<int>(req_int(recs[ri], "omega_index", rp));
        if (rec.omega_index < 0 || rec.omega_index >= ds.ladder.count)
            throw SchemaError(rp + ".omega_index: out of range");
        const json& al = req(recs[ri], "alpha", rp);
        if (!al.is_string() || (al.get<std::string>() != "p" && al.get<std::string>() != "s"))
            throw SchemaError(rp + ".alpha: expected \"p\" or \"s\"");
        rec.alpha = al.get<std::string>() == "p" ? WaveType::P : WaveType::S;
        const std::size_t slot =
            2 * static_cast<std::size_t>(rec.omega_index) + (rec.alpha == WaveType::P ? 0 : 1);
        if (seen[slot]++) throw SchemaError(rp + ": duplicate (omega_index, alpha) record");
        const json& u = req_array(recs[ri], "u", rp);
        const json& t = req_array(recs[ri], "t", rp);
        if (u.size() != nn || t.size() != nn)
            throw SchemaError(rp + ": u/t must have one entry per geometry node");
        for (std::size_t i = 0; i < nn; ++i) {
            rec.u.push_back(parse_cvec<D>(u[i], rp + ".u[" + std::to_string(i) + "]"));
            rec.t.push_back(parse_cvec<D>(t[i], rp + ".t[" + std::to_string(i) + "]"));
        }
        ds.records.push_back(std::move(rec));
    }

    const json& noise = req(j, "noise", "$");
    if (!noise.is_null()) {
        NoiseSpec spec;
        spec.level = req_num(noise, "level", "$.noise");
        const json& seed = req(noise, "seed", "$.noise");
        if (!seed.is_number_unsigned() && !seed.is_number_integer())
            throw SchemaError("$.noise.seed: expected an unsigned integer");
        spec.seed = seed.get<std::uint64_t>();
        if (spec.level < 0.0 || !(spec.level < 1.0))
            throw SchemaError("$.noise.level: must satisfy 0 <= level < 1");
        ds.noise = spec;
    }
    return ds;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

} // namespace

std::string dataset_to_json(const CauchyDataset<2>& ds) { return to_json_impl<2>(ds).dump(); }
std::string dataset_to_json(const CauchyDataset<3>& ds) { return to_json_impl<3>(ds).dump(); }

AnyDataset dataset_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("$: not valid JSON: ") + e.what());
    }
    const std::int64_t version = req_int(j, "version", "$");
    if (version != 1)
        throw SchemaError("$.version: unsupported version " + std::to_string(version));
    const std::int64_t dim = req_int(j, "dim", "$");
    if (dim == 2) return from_json_impl<2>(j);
    if (dim == 3) return from_json_impl<3>(j);
    throw SchemaError("$.dim: must be 2 or 3");
}

void write_dataset(const CauchyDataset<2>& ds, const std::string& path) {
    write_text(path, dataset_to_json(ds));
}

void write_dataset(const CauchyDataset<3>& ds, const std::string& path) {
    write_text(path, dataset_to_json(ds));
}

AnyDataset read_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return dataset_from_json(text);
}

} // namespace ewi
