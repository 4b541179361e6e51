#include "fls/cli/json_io.hpp"

#include <cmath>
#include <cstdio>

#include "fls/error.hpp"

namespace fls::cli {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) fail(ErrorCode::schema, std::string("expected an object with member '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) fail(ErrorCode::schema, std::string("missing member '") + key + "'");
    return *it;
}

Rational parse_rational_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    fail(ErrorCode::schema, "expected an integer or a \"p/q\" string, got " + j.dump());
}

RationalMatrix parse_rational_matrix(const Json& j) {
    if (!j.is_array() || j.empty()) fail(ErrorCode::schema, "matrix must be a nonempty array of rows");
    RationalMatrix out;
    for (const auto& row : j) {
        if (!row.is_array()) fail(ErrorCode::schema, "matrix rows must be arrays");
        std::vector<Rational> r;
        for (const auto& e : row) r.push_back(parse_rational_json(e));
        if (!out.empty() && r.size() != out.front().size()) fail(ErrorCode::schema, "matrix rows differ in length");
        out.push_back(std::move(r));
    }
    return out;
}

MatroidPtr parse_matroid(const Json& j) {
    const std::string type = field(j, "type").get<std::string>();
    if (type == "linear") return make_linear(parse_rational_matrix(field(j, "matrix")));
    if (type == "uniform") return make_uniform(field(j, "l").get<int>(), field(j, "n").get<int>());
    fail(ErrorCode::schema, "unknown matroid type '" + type + "'");
}

Json matroid_json(const Matroid& m) {
    if (auto u = dynamic_cast<const UniformMatroid*>(&m))
        return {{"type", "uniform"}, {"l", u->rank_bound()}, {"n", m.ground().size()}};
    if (auto lin = dynamic_cast<const LinearMatroid*>(&m)) {
        Json rows = Json::array();
        for (const auto& row : lin->matrix()) {
            Json r = Json::array();
            for (const auto& q : row) {
                if (denominator(q) == 1)
                    r.push_back(static_cast<long long>(numerator(q)));
                else
                    r.push_back(to_string(q));
            }
            rows.push_back(std::move(r));
        }
        return {{"type", "linear"}, {"matrix", rows}};
    }
    return {{"type", "opaque"}, {"describe", m.describe()}};
}

Subset parse_subset(const Json& j, int n) {
    if (!j.is_array()) fail(ErrorCode::schema, "subset must be an array of labels");
    Subset out;
    int last = 0;
    for (const auto& e : j) {
        if (!e.is_number_integer()) fail(ErrorCode::schema, "subset labels must be integers");
        const int label = e.get<int>();
        if (label < 1 || label > n) fail(ErrorCode::domain, "label " + std::to_string(label) + " outside 1.." + std::to_string(n));
        if (label <= last) fail(ErrorCode::schema, "subset labels must be strictly increasing");
        out.insert(label);
        last = label;
    }
    return out;
}

Json subset_json(Subset s) { return Json(s.labels()); }

System parse_system(const Json& j) {
    if (!j.is_array() || j.empty()) fail(ErrorCode::schema, "system must be a nonempty array of multiplicities");
    std::vector<int> v;
    for (const auto& e : j) {
        if (!e.is_number_integer()) fail(ErrorCode::schema, "multiplicities must be integers");
        v.push_back(e.get<int>());
    }
    return System(v);
}

Json system_json(const System& t) { return Json(t.values()); }

std::string system_key(const System& t) {
    std::string out = "[";
    for (int i = 1; i <= t.labels(); ++i) {
        if (i > 1) out += ",";
        out += std::to_string(t[i]);
    }
    return out + "]";
}

Complex parse_complex(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_string()) return {to_double(parse_rational(j.get<std::string>())), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    fail(ErrorCode::schema, "expected a number, \"p/q\" string or [re, im], got " + j.dump());
}

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Point parse_point(const Json& j) {
    if (!j.is_array()) fail(ErrorCode::schema, "point must be an array");
    Point p(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) p(static_cast<Eigen::Index>(i)) = parse_complex(j[i]);
    return p;
}

Json vector_json(const CVector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
    return out;
}

ArrangementData parse_arrangement(const Json& j) {
    ArrangementData d;
    d.b = parse_rational_matrix(field(j, "B"));
    const Json& a = field(j, "a");
    if (!a.is_array()) fail(ErrorCode::schema, "weights must be an array");
    for (const auto& w : a) d.weights.push_back(parse_complex(w));
    d.basepoint = parse_point(field(j, "x"));
    d.validate();
    return d;
}

PartitionProblem parse_partition_problem(const Json& j) {
    const int n = field(j, "ground").get<int>();
    const Json& ms = field(j, "matroids");
    if (!ms.is_array() || ms.empty()) fail(ErrorCode::schema, "matroids must be a nonempty array");
    std::vector<MatroidPtr> matroids;
    for (const auto& m : ms) {
        matroids.push_back(parse_matroid(m));
        if (matroids.back()->ground().size() != n)
            fail(ErrorCode::domain, "matroid ground size differs from 'ground'");
    }
    return PartitionProblem(std::move(matroids));
}

Json strong_decomposition_json(const StrongDecomposition& d) {
    Json bases = Json::array();
    for (const auto& b : d.bases) bases.push_back(system_json(b));
    return {{"bases", bases}, {"remainder", system_json(d.remainder)}};
}

namespace {

void emit_to(const Json& j, std::string& out, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += Json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                emit_to(it.value(), out, indent, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            bool flat = true;
            for (const auto& e : j) flat = flat && !e.is_structured();
            out += '[';
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += flat && indent >= 0 ? ", " : ",";
                first = false;
                if (!flat) newline(depth + 1);
                emit_to(e, out, indent, depth + 1);
            }
            if (!flat) newline(depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) {
                out += "null";
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
            std::string s(buf);
            if (s.find_first_of(".eE") == std::string::npos) s += ".0";
            out += s;
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string emit(const Json& j, int indent) {
    std::string out;
    emit_to(j, out, indent, 0);
    out += '\n';
    return out;
}

}  // namespace fls::cli
