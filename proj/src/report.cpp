#include "orlicz/report.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace orlicz {

using nlohmann::json;

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Counts count_verdicts(const std::vector<CheckRow>& rows) {
    Counts c;
    for (const auto& r : rows) {
        if (r.verdict == Verdict::pass) ++c.pass;
        else if (r.verdict == Verdict::fail) ++c.fail;
        else ++c.vacuous;
    }
    return c;
}

std::string rows_csv(const std::vector<CheckRow>& rows) {
    std::string out = "check_id,instance_hash,margin,tol,verdict\n";
    for (const auto& r : rows) {
        out += r.check_id;
        out += ',';
        out += hash_hex(r.instance_hash);
        out += ',';
        out += format_double(r.margin);
        out += ',';
        out += format_double(r.tol);
        out += ',';
        out += to_string(r.verdict);
        out += '\n';
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

namespace {

json counts_json(const Counts& c) { return {{"pass", c.pass}, {"fail", c.fail}, {"vacuous", c.vacuous}}; }

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
}

template <class T>
T get(const json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument(std::string("bad field \"") + key + "\"");
    }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    return j.contains(key) ? get<T>(j, key) : fallback;
}

double point_value(const json& v) {
    if (v.is_string()) {
        const auto t = v.get<std::string>();
        if (t == "inf" || t == "+inf" || t == "Infinity") return kInf;
        throw std::invalid_argument("bad point value \"" + t + "\"");
    }
    if (!v.is_number()) throw std::invalid_argument("point values must be numbers or \"inf\"");
    return v.get<double>();
}

YoungFunction from_point_list(const json& f, const char* key) {
    if (!f.contains(key) || !f[key].is_array()) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
    std::vector<std::pair<double, double>> p;
    for (const auto& q : f[key]) {
        if (!q.is_array() || q.size() != 2) throw std::invalid_argument("points must be [x, value] pairs");
        p.emplace_back(point_value(q[0]), point_value(q[1]));
    }
    const auto interp = get_or<std::string>(f, "interp", "linear");
    if (interp != "linear" && interp != "power") throw std::invalid_argument("interp must be linear or power");
    auto y = YoungFunction::from_points(p, interp == "power" ? Interp::power : Interp::linear, get_or(f, "p", 1.0));
    if (f.contains("cap")) y = y.capped(get<double>(f, "cap"));
    return y;
}

// kind_key is "kind" inside {"type": "functions"} and "type" inside {"young": [...]}.
YoungFunction parse_young(const json& f, const char* kind_key) {
    const auto kind = get<std::string>(f, kind_key);
    if (kind == "power") return YoungFunction::power(get<double>(f, "p"), get_or(f, "scale", 1.0));
    if (kind == "cube") return YoungFunction::cube(get<double>(f, "width"));
    if (kind == "points" || kind == "pieces") return from_point_list(f, "points");
    throw std::invalid_argument("unknown Young function kind \"" + kind + "\"");
}

OrliczBall ball_from_list(const json& list, const char* kind_key) {
    if (!list.is_array() || list.empty()) throw std::invalid_argument("a ball needs a nonempty list of Young functions");
    std::vector<YoungFunction> f;
    for (const auto& e : list) f.push_back(parse_young(e, kind_key));
    return OrliczBall(std::move(f));
}

}  // namespace

std::string summary_json(const std::string& suite, std::uint64_t seed, const std::vector<CheckRow>& rows) {
    std::map<std::string, std::vector<CheckRow>> by_id;
    for (const auto& r : rows) by_id[r.check_id].push_back(r);
    json checks = json::object();
    for (const auto& [id, rs] : by_id) checks[id] = counts_json(count_verdicts(rs));
    json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["rows"] = rows.size();
    j["counts"] = counts_json(count_verdicts(rows));
    j["checks"] = checks;
    const CheckRow* worst = nullptr;
    for (const auto& r : rows)
        if (r.verdict != Verdict::vacuous && (!worst || r.margin + r.tol < worst->margin + worst->tol)) worst = &r;
    if (worst)
        j["tightest"] = {{"check_id", worst->check_id},
                         {"instance_hash", hash_hex(worst->instance_hash)},
                         {"margin", format_double(worst->margin)},
                         {"tol", format_double(worst->tol)}};
    return j.dump(2) + "\n";
}

OrliczBall parse_ball(const std::string& json_text) {
    const json j = parse(json_text);
    if (j.contains("young")) return ball_from_list(j["young"], "type");
    const auto type = get<std::string>(j, "type");
    if (type == "lp") return OrliczBall::lp(get<std::size_t>(j, "n"), get<double>(j, "p"));
    if (type == "cube") return OrliczBall::cube(get<std::size_t>(j, "n"), get_or(j, "half_width", 1.0));
    if (type == "box") return OrliczBall::box(get<std::vector<double>>(j, "half_widths"));
    if (type == "functions") {
        if (!j.contains("functions")) throw std::invalid_argument("missing field \"functions\"");
        return ball_from_list(j["functions"], "kind");
    }
    throw std::invalid_argument("unknown ball type \"" + type + "\"");
}

CSet parse_cset(const std::string& json_text) {
    const auto corners = get<std::vector<std::vector<double>>>(parse(json_text), "corners");
    if (corners.empty()) throw std::invalid_argument("a c-set needs at least one corner");
    return CSet(corners.front().size(), corners);
}

StairSet parse_stair(const std::string& json_text) {
    const json j = parse(json_text);
    return StairSet(get<std::vector<double>>(j, "xs"), get<std::vector<double>>(j, "heights"));
}

}  // namespace orlicz
