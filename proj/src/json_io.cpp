#include "qorbit/json_io.hpp"

#include <cstdio>

namespace qorbit {

std::string real_str(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Json rational_json(const Rational& r) { return r.str(); }

Json laurent_json(const LaurentPoly& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json t;
        t["exp"] = "q^{" + e.str() + "}";
        t["coeff"] = c.str();
        terms.push_back(t);
    }
    Json out;
    out["terms"] = terms;
    out["display"] = p.str();
    return out;
}

Json polar_json(const PolarRational& v) {
    Json out;
    out["mod"] = v.modulus().str();
    out["phase"] = v.phase().str();
    return out;
}

Json qscalar_json(const QScalar& v) {
    Json out;
    out["scale"] = v.scale().str();
    out["qexp"] = v.qexp().str();
    out["phase"] = v.phase().str();
    out["display"] = v.str();
    return out;
}

Json weight_json(const Weight& w) {
    Json arr = Json::array();
    for (const auto& c : w.c) arr.push_back(c.str());
    return arr;
}

Json hcartan_json(const HCartanElement& el) {
    Json arr = Json::array();
    for (const auto& [w, c] : el.terms) {
        Json t;
        t["weight"] = weight_json(w);
        t["coeff"] = laurent_json(c);
        arr.push_back(t);
    }
    Json out;
    out["terms"] = arr;
    out["display"] = el.str();
    return out;
}

Json flags_json(const DatumFlags& f) {
    Json out;
    out["regular"] = f.regular;
    out["positive"] = f.positive;
    out["strongly_positive"] = f.strongly_positive;
    out["symmetric_pair"] = f.symmetric_pair;
    out["gauge"] = f.gauge;
    out["ungauged"] = f.ungauged;
    out["reduced"] = f.reduced;
    out["strongly_reduced"] = f.strongly_reduced;
    return out;
}

Rational parse_rational(const Json& j) {
    if (j.is_number_integer()) return Rational((long long)j.get<long long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw std::invalid_argument("expected a rational as integer or \"p/q\" string");
}

namespace {

// compact scalar forms: "3/2", "-q^{1/2}", "3*q^-2", "q^3"
QScalar parse_compact_scalar(std::string s) {
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    Rational scale(1);
    Rational qexp(0);
    auto qpos = s.find('q');
    if (qpos == std::string::npos) {
        scale = Rational::parse(s);
    } else {
        std::string head = s.substr(0, qpos);
        if (!head.empty()) {
            if (head.back() == '*') head.pop_back();
            if (!head.empty()) scale = Rational::parse(head);
        }
        std::string tail = s.substr(qpos + 1);
        if (tail.empty()) {
            qexp = Rational(1);
        } else {
            if (tail[0] != '^') throw std::invalid_argument("bad q power: " + s);
            tail = tail.substr(1);
            if (!tail.empty() && tail.front() == '{' && tail.back() == '}')
                tail = tail.substr(1, tail.size() - 2);
            qexp = Rational::parse(tail);
        }
    }
    QScalar v(scale, qexp, Rational(0));
    return neg ? -v : v;
}

} // namespace

QScalar parse_qscalar(const Json& j) {
    if (j.is_object()) {
        Rational scale = j.contains("scale") ? parse_rational(j.at("scale")) : Rational(1);
        Rational qexp = j.contains("qexp") ? parse_rational(j.at("qexp")) : Rational(0);
        Rational phase = j.contains("phase") ? parse_rational(j.at("phase")) : Rational(0);
        return QScalar(scale, qexp, phase);
    }
    if (j.is_number_integer()) return QScalar::from_real(Rational((long long)j.get<long long>()));
    if (j.is_string()) return parse_compact_scalar(j.get<std::string>());
    throw std::invalid_argument("expected a scalar as string or {scale,qexp,phase}");
}

PolarRational parse_polar(const Json& j) {
    if (j.is_object()) {
        Rational mod = parse_rational(j.at("mod"));
        Rational phase = j.contains("phase") ? parse_rational(j.at("phase")) : Rational(0);
        return PolarRational(mod, phase);
    }
    return PolarRational::from_real(parse_rational(j));
}

Weight parse_weight_list(const std::string& csv, std::size_t rank) {
    Weight w(rank);
    std::size_t pos = 0, idx = 0;
    while (idx < rank) {
        auto comma = csv.find(',', pos);
        std::string tok = comma == std::string::npos ? csv.substr(pos) : csv.substr(pos, comma - pos);
        w.c[idx++] = Rational::parse(tok);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (idx != rank) throw std::invalid_argument("weight list has wrong length: " + csv);
    return w;
}

std::shared_ptr<const RootSystem> parse_root_system(const Json& j) {
    if (j.contains("cartan")) {
        auto rows = j.at("cartan").get<std::vector<std::vector<int>>>();
        return RootSystem::from_cartan(rows);
    }
    if (j.contains("type")) return RootSystem::from_label(j.at("type").get<std::string>());
    throw std::invalid_argument("root system needs \"type\" or \"cartan\"");
}

Involution parse_involution(const Json& j, const RootSystem& rs) {
    if (!j.contains("tau")) return Involution::identity(rs);
    auto perm1 = j.at("tau").get<std::vector<int>>(); // 1-based image list
    std::vector<int> perm;
    for (int v : perm1) perm.push_back(v - 1);
    return Involution(rs, perm);
}

TwistingDatum parse_datum(const Json& j) {
    auto rs = parse_root_system(j);
    Involution tau = parse_involution(j, *rs);
    if (!j.contains("eps")) throw std::invalid_argument("twisting datum needs \"eps\"");
    std::vector<PolarRational> eps;
    for (const auto& e : j.at("eps")) eps.push_back(parse_polar(e));
    if (eps.size() != rs->rank()) throw std::invalid_argument("eps has wrong length");
    return TwistingDatum(rs, tau, eps);
}

WeightFunction parse_weight_function(const Json& j, const TwistingDatum& datum) {
    std::vector<QScalar> vals;
    for (const auto& e : j) vals.push_back(parse_qscalar(e));
    return WeightFunction(datum.root_system_ptr(), datum.tau(), vals);
}

} // namespace qorbit
