#include "qorbit/charring.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace qorbit {

// -------------------------------------------------------------- CharElement

void CharElement::add_term(const Weight& w, const LaurentPoly& c) {
    if (w.rank() != rank_) throw std::invalid_argument("CharElement: lattice mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CharElement& CharElement::operator+=(const CharElement& o) {
    if (o.rank_ != rank_) throw std::invalid_argument("CharElement: lattice mismatch");
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

CharElement& CharElement::operator-=(const CharElement& o) {
    if (o.rank_ != rank_) throw std::invalid_argument("CharElement: lattice mismatch");
    for (const auto& [w, c] : o.terms_) {
        LaurentPoly neg = -c;
        add_term(w, neg);
    }
    return *this;
}

std::string CharElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")e^" << w.str();
    }
    return os.str();
}

CharElement char_mul(const CharElement& a, const CharElement& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("char_mul: lattice mismatch");
    CharElement r(a.rank());
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) r.add_term(wa + wb, ca * cb);
    return r;
}

namespace {

struct GradedOrder {
    const RootSystem* rs;
    Weight two_rho;

    explicit GradedOrder(const RootSystem& r) : rs(&r), two_rho(Rational(2) * r.rho()) {}

    Rational grade(const Weight& w) const { return rs->pairing(two_rho, w); }

    // strict "a before b" (a larger in the term order)
    bool larger(const Weight& a, const Weight& b) const {
        Rational ga = grade(a), gb = grade(b);
        if (ga != gb) return gb < ga;
        return b < a;
    }

    const Weight* leading(const CharElement& c) const {
        const Weight* best = nullptr;
        for (const auto& [w, coeff] : c.terms())
            if (!best || larger(w, *best)) best = &w;
        return best;
    }
};

} // namespace

CharElement char_div(const RootSystem& rs, const CharElement& num, const CharElement& den) {
    if (num.rank() != den.rank()) throw std::invalid_argument("char_div: lattice mismatch");
    if (den.is_zero()) throw std::invalid_argument("char_div: zero divisor");
    GradedOrder ord(rs);
    const Weight* dl = ord.leading(den);
    const LaurentPoly& dlc = den.terms().at(*dl);
    Weight den_lead = *dl;

    CharElement r = num;
    CharElement q(num.rank());
    // Exact quotients cannot reach below this grade.
    std::optional<Rational> low;
    if (!num.is_zero()) {
        Rational num_min = ord.grade(num.terms().begin()->first);
        Rational den_min = ord.grade(den.terms().begin()->first);
        for (const auto& [w, c] : num.terms()) num_min = std::min(num_min, ord.grade(w));
        for (const auto& [w, c] : den.terms()) den_min = std::min(den_min, ord.grade(w));
        low = num_min - den_min;
    }
    while (!r.is_zero()) {
        const Weight* rl = ord.leading(r);
        Weight qw = *rl - den_lead;
        if (low && ord.grade(qw) < *low)
            throw std::domain_error("char_div: non-exact division, remainder at e^" + rl->str());
        LaurentPoly qc = laurent_div(r.terms().at(*rl), dlc);
        q.add_term(qw, qc);
        CharElement t(num.rank());
        t.add_term(qw, qc);
        r -= char_mul(t, den);
    }
    return q;
}

// ---------------------------------------------------------------- MultTable

MultTable::MultTable(std::shared_ptr<const RootSystem> rs, Weight hw)
    : rs_(std::move(rs)), hw_(std::move(hw)) {
    if (!hw_.is_integral() || !hw_.is_dominant())
        throw std::invalid_argument("weight_mults: highest weight must be dominant integral");
    dim_ = rs_->weyl_dimension(hw_);
    if (dim_ > BigInt(kDimGuard)) throw guard_error("weight_mults: dimension guard exceeded");

    const RootSystem& R = *rs_;
    std::size_t n = R.rank();
    // box bounds: alpha-coordinates of hw - w0(hw)
    Weight lowest = R.dominant_representative(-hw_); // w0(hw) = -dominant(-hw)
    Weight span = hw_ + lowest;                      // hw - w0 hw
    auto bounds_r = R.alpha_coords(span);
    std::vector<long long> bounds(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!bounds_r[i].is_integer() || bounds_r[i].is_negative())
            throw std::logic_error("weight_mults: bad span");
        bounds[i] = bounds_r[i].num().convert_to<long long>();
    }

    // enumerate dominant weights hw - beta over the box
    struct Cand {
        Weight mu;
        long long height;
    };
    std::vector<Cand> cands;
    std::vector<long long> beta(n, 0);
    Rational bound_norm = R.pairing(hw_ + R.rho(), hw_ + R.rho());
    while (true) {
        Weight b(n);
        long long ht = 0;
        for (std::size_t i = 0; i < n; ++i) {
            ht += beta[i];
            b.c[i] = Rational(beta[i]);
        }
        Weight mu = hw_ - R.weight_from_alpha_coords(
                              std::vector<Rational>(b.c.begin(), b.c.end()));
        if (mu.is_dominant() && R.pairing(mu + R.rho(), mu + R.rho()) <= bound_norm)
            cands.push_back({mu, ht});
        // increment the box counter
        std::size_t i = 0;
        while (i < n) {
            if (++beta[i] <= bounds[i]) break;
            beta[i] = 0;
            ++i;
        }
        if (i == n) break;
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.height != b.height) return a.height < b.height;
        return a.mu < b.mu;
    });

    const Rational norm_top = R.pairing(hw_ + R.rho(), hw_ + R.rho());
    for (const auto& cand : cands) {
        const Weight& mu = cand.mu;
        if (mu == hw_) {
            dominant_[mu] = 1;
            continue;
        }
        Rational denom = norm_top - R.pairing(mu + R.rho(), mu + R.rho());
        if (denom.is_zero()) continue; // cannot be a weight of V_hw
        Rational sum(0);
        for (const auto& pr : R.positive_roots()) {
            for (long long k = 1;; ++k) {
                Weight up = mu + Rational(k) * pr.w;
                Weight dom = R.dominant_representative(up);
                auto it = dominant_.find(dom);
                if (it == dominant_.end()) {
                    // above the already-computed layers: either outside the
                    // weight diagram or past the top
                    if (R.pairing(up + R.rho(), up + R.rho()) > norm_top) break;
                    continue;
                }
                sum += Rational(it->second) * R.pairing(up, pr.w);
            }
        }
        Rational m = Rational(2) * sum / denom;
        if (!m.is_integer() || m.is_negative())
            throw std::logic_error("Freudenthal: non-integral multiplicity");
        if (!m.is_zero()) dominant_[mu] = m.num();
    }

    // exact closure: total count must match the Weyl dimension
    BigInt total = 0;
    for_each_weight([&](const Weight&, const BigInt& m) { total += m; });
    if (total != dim_) throw internal_check_error("Freudenthal: dimension mismatch");
}

BigInt MultTable::mult(const Weight& omega) const {
    Weight dom = rs_->dominant_representative(omega);
    auto it = dominant_.find(dom);
    return it == dominant_.end() ? BigInt(0) : it->second;
}

void MultTable::for_each_weight(
    const std::function<void(const Weight&, const BigInt&)>& fn) const {
    for (const auto& [mu, m] : dominant_) {
        std::set<Weight> orbit{mu};
        std::deque<Weight> queue{mu};
        while (!queue.empty()) {
            Weight w = queue.front();
            queue.pop_front();
            fn(w, m);
            for (std::size_t r = 0; r < rs_->rank(); ++r) {
                Weight img = rs_->simple_reflection(r).act(w);
                if (orbit.insert(img).second) queue.push_back(img);
            }
        }
    }
}

LaurentPoly q_dim(const RootSystem& rs, const MultTable& table) {
    LaurentPoly acc;
    Weight two_rho = Rational(2) * rs.rho();
    table.for_each_weight([&](const Weight& w, const BigInt& m) {
        acc.add_term(rs.pairing(two_rho, w), Rational(m));
    });
    return acc;
}

LaurentPoly q_dim_product(const RootSystem& rs, const Weight& hw) {
    LaurentPoly num = LaurentPoly::one();
    LaurentPoly den = LaurentPoly::one();
    for (const auto& pr : rs.positive_roots()) {
        Rational a = rs.pairing(hw + rs.rho(), pr.w);
        Rational b = rs.pairing(rs.rho(), pr.w);
        num *= LaurentPoly::term(Rational(1), -a) - LaurentPoly::term(Rational(1), a);
        den *= LaurentPoly::term(Rational(1), -b) - LaurentPoly::term(Rational(1), b);
    }
    return laurent_div(num, den);
}

// ------------------------------------------------------------ twining table

TwiningTable twining_mults(const FoldedSystem& fs, const Weight& hw) {
    const RootSystem& rs = fs.base();
    if (!hw.is_integral() || !hw.is_dominant())
        throw std::invalid_argument("twining_mults: highest weight must be dominant integral");
    if (fs.tau().act(hw) != hw)
        throw std::invalid_argument("twining_mults: highest weight must be tau-fixed");

    CharElement num(rs.rank()), den(rs.rank());
    Weight top = hw + rs.rho();
    for (const auto& w : fs.weyl_tau()) {
        Rational sgn(fs.hsgn(w));
        num.add_term(fs.project(w.act(top)), sgn);
        den.add_term(fs.project(w.act(rs.rho())), sgn);
    }
    CharElement quot = char_div(rs, num, den);

    TwiningTable t;
    t.hw = hw;
    for (const auto& [w, c] : quot.terms()) {
        if (!c.is_constant())
            throw internal_check_error("twining_mults: non-constant coefficient");
        Rational v = c.terms().empty() ? Rational(0) : c.terms().begin()->second;
        if (!v.is_integer()) throw internal_check_error("twining_mults: non-integer trace");
        long long j = v.num().convert_to<long long>();
        if (j != 0) t.jvals[w] = j;
    }
    return t;
}

} // namespace qorbit
