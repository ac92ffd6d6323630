#include "qorbit/classical_module.hpp"

#include <algorithm>

namespace qorbit {

namespace {

using Row = std::vector<Rational>;
using Mat = std::vector<Row>;

// Solve G a = rhs for symmetric positive-definite G (exact).
Row solve_pd(Mat g, Row rhs) {
    std::size_t n = g.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && g[piv][col].is_zero()) ++piv;
        if (piv == n) throw std::logic_error("solve_pd: singular Gram matrix");
        std::swap(g[piv], g[col]);
        std::swap(rhs[piv], rhs[col]);
        Rational p = g[col][col];
        for (auto& x : g[col]) x /= p;
        rhs[col] /= p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || g[i][col].is_zero()) continue;
            Rational f = g[i][col];
            for (std::size_t j = 0; j < n; ++j) g[i][j] -= f * g[col][j];
            rhs[i] -= f * rhs[col];
        }
    }
    return rhs;
}

Row zero_row(std::size_t n) { return Row(n, Rational(0)); }

Row axpy(Row a, const Rational& s, const Row& b) {
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += s * b[i];
    return a;
}

} // namespace

ClassicalModule::ClassicalModule(std::shared_ptr<const RootSystem> rs, Weight hw)
    : rs_(std::move(rs)), hw_(std::move(hw)) {
    const RootSystem& R = *rs_;
    std::size_t n = R.rank();
    if (!hw_.is_integral() || !hw_.is_dominant())
        throw std::invalid_argument("ClassicalModule: highest weight must be dominant integral");
    if (R.weyl_dimension(hw_) > BigInt(200000))
        throw guard_error("ClassicalModule: dimension guard exceeded");

    // top space
    Space top;
    top.gen = {-1};
    top.parent = {0};
    top.gram = {{Rational(1)}};
    for (std::size_t r = 0; r < n; ++r) {
        top.e_mat[(int)r] = { zero_row(0) };
    }
    spaces_.emplace(hw_, std::move(top));

    // process weights by depth (height of hw - mu)
    std::map<long long, std::vector<Weight>> frontier;
    frontier[0] = {hw_};
    long long depth = 0;
    while (frontier.count(depth)) {
        // collect candidate child weights
        std::set<Weight> children;
        for (const Weight& mu : frontier[depth])
            for (std::size_t r = 0; r < n; ++r) children.insert(mu - R.simple_root(r));

        for (const Weight& mu : children) {
            // candidates: f_r b for each parent space mu + alpha_r
            struct Cand {
                int r;
                std::size_t idx; // index in the parent basis
            };
            std::vector<Cand> cands;
            for (std::size_t r = 0; r < n; ++r) {
                Weight up = mu + R.simple_root(r);
                auto it = spaces_.find(up);
                if (it == spaces_.end()) continue;
                for (std::size_t i = 0; i < it->second.gen.size(); ++i)
                    cands.push_back({(int)r, i});
            }
            if (cands.empty()) continue;

            // inner products of candidates:
            // <f_r b, f_s b'> = <b, f_s (e_r b') + delta_rs (wt b', alpha_r^vee) b'>
            auto cand_inner = [&](const Cand& x, const Cand& y) {
                Weight upx = mu + R.simple_root((std::size_t)x.r);
                Weight upy = mu + R.simple_root((std::size_t)y.r);
                const Space& spx = spaces_.at(upx);
                const Space& spy = spaces_.at(upy);
                // e_{x.r} applied to b'_y: coords in upy + alpha_{x.r}
                Weight upyx = upy + R.simple_root((std::size_t)x.r);
                Row total = zero_row(spx.gen.size());
                auto eit = spy.e_mat.find(x.r);
                if (eit != spy.e_mat.end() && spaces_.count(upyx)) {
                    const Row& ecoords = eit->second[y.idx];
                    const Space& spyx = spaces_.at(upyx);
                    auto fit = spyx.f_mat.find(y.r);
                    if (fit != spyx.f_mat.end()) {
                        for (std::size_t j = 0; j < ecoords.size(); ++j) {
                            if (ecoords[j].is_zero()) continue;
                            total = axpy(std::move(total), ecoords[j], fit->second[j]);
                        }
                    }
                }
                if (x.r == y.r) {
                    Rational c = R.pair_coroot(upy, R.simple_root((std::size_t)x.r));
                    total[y.idx] += c;
                }
                // <b_x, total> via the Gram matrix of the space upx
                Rational acc(0);
                for (std::size_t j = 0; j < total.size(); ++j) {
                    if (total[j].is_zero()) continue;
                    acc += spx.gram[x.idx][j] * total[j];
                }
                return acc;
            };

            std::size_t m = cands.size();
            Mat G(m, zero_row(m));
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j <= i; ++j) {
                    G[i][j] = cand_inner(cands[i], cands[j]);
                    G[j][i] = G[i][j];
                }

            // greedy selection of a positive-definite principal minor
            std::vector<std::size_t> chosen;
            std::vector<Row> rejected_coords(m);
            std::vector<bool> accepted(m, false);
            for (std::size_t i = 0; i < m; ++i) {
                if (chosen.empty()) {
                    if (!G[i][i].is_zero()) {
                        chosen.push_back(i);
                        accepted[i] = true;
                    } else {
                        rejected_coords[i] = {};
                    }
                    continue;
                }
                Mat gch(chosen.size(), zero_row(chosen.size()));
                Row rhs(chosen.size());
                for (std::size_t a = 0; a < chosen.size(); ++a) {
                    rhs[a] = G[chosen[a]][i];
                    for (std::size_t b = 0; b < chosen.size(); ++b) gch[a][b] = G[chosen[a]][chosen[b]];
                }
                Row coef = solve_pd(gch, rhs);
                Rational residual = G[i][i];
                for (std::size_t a = 0; a < chosen.size(); ++a) residual -= coef[a] * G[chosen[a]][i];
                if (!residual.is_zero()) {
                    chosen.push_back(i);
                    accepted[i] = true;
                } else {
                    rejected_coords[i] = coef;
                }
            }
            // candidates rejected before any acceptance have empty coords
            for (std::size_t i = 0; i < m; ++i)
                if (!accepted[i] && rejected_coords[i].size() != chosen.size()) {
                    // re-solve against the final chosen set
                    if (chosen.empty()) {
                        rejected_coords[i] = {};
                        continue;
                    }
                    Mat gch(chosen.size(), zero_row(chosen.size()));
                    Row rhs(chosen.size());
                    for (std::size_t a = 0; a < chosen.size(); ++a) {
                        rhs[a] = G[chosen[a]][i];
                        for (std::size_t b = 0; b < chosen.size(); ++b)
                            gch[a][b] = G[chosen[a]][chosen[b]];
                    }
                    rejected_coords[i] = solve_pd(gch, rhs);
                }

            if (chosen.empty()) continue; // weight space vanishes

            Space sp;
            for (std::size_t a = 0; a < chosen.size(); ++a) {
                sp.gen.push_back(cands[chosen[a]].r);
                sp.parent.push_back(cands[chosen[a]].idx);
            }
            sp.gram.assign(chosen.size(), zero_row(chosen.size()));
            for (std::size_t a = 0; a < chosen.size(); ++a)
                for (std::size_t b = 0; b < chosen.size(); ++b) sp.gram[a][b] = G[chosen[a]][chosen[b]];

            // record f_mat rows on the parent spaces
            for (std::size_t i = 0; i < m; ++i) {
                const Cand& c = cands[i];
                Weight up = mu + R.simple_root((std::size_t)c.r);
                Space& parent_sp = spaces_.at(up);
                auto& rows = parent_sp.f_mat[c.r];
                rows.resize(parent_sp.gen.size(), zero_row(0));
                Row coords(chosen.size(), Rational(0));
                if (accepted[i]) {
                    std::size_t pos = 0;
                    while (chosen[pos] != i) ++pos;
                    coords[pos] = Rational(1);
                } else {
                    for (std::size_t a = 0; a < rejected_coords[i].size(); ++a)
                        coords[a] = rejected_coords[i][a];
                }
                rows[c.idx] = std::move(coords);
            }

            // e matrices of the new space:
            // e_s (f_r b) = f_r (e_s b) + delta_rs (wt b, alpha_s^vee) b
            for (std::size_t s = 0; s < n; ++s) {
                Weight target = mu + R.simple_root(s);
                auto tit = spaces_.find(target);
                std::size_t tdim = tit == spaces_.end() ? 0 : tit->second.gen.size();
                std::vector<Row> rows;
                for (std::size_t a = 0; a < chosen.size(); ++a) {
                    const Cand& c = cands[chosen[a]];
                    Weight up = mu + R.simple_root((std::size_t)c.r); // wt of b
                    const Space& spb = spaces_.at(up);
                    Row out = zero_row(tdim);
                    // f_r(e_s b): e_s b lives at up + alpha_s
                    Weight upup = up + R.simple_root(s);
                    auto eit = spb.e_mat.find((int)s);
                    if (eit != spb.e_mat.end() && spaces_.count(upup)) {
                        const Row& ecoords = eit->second[c.idx];
                        const Space& spupup = spaces_.at(upup);
                        auto fit = spupup.f_mat.find(c.r);
                        if (fit != spupup.f_mat.end() && tdim > 0) {
                            for (std::size_t j = 0; j < ecoords.size(); ++j) {
                                if (ecoords[j].is_zero()) continue;
                                out = axpy(std::move(out), ecoords[j], fit->second[j]);
                            }
                        }
                    }
                    if ((int)s == c.r && tdim > 0) {
                        Rational coef = R.pair_coroot(up, R.simple_root(s));
                        out[c.idx] += coef;
                    }
                    rows.push_back(std::move(out));
                }
                sp.e_mat[(int)s] = std::move(rows);
            }

            spaces_.emplace(mu, std::move(sp));
            frontier[depth + 1].push_back(mu);
        }
        ++depth;
    }

    for (const auto& [mu, sp] : spaces_) dims_[mu] = sp.gen.size();
}

const ClassicalModule::Space* ClassicalModule::space(const Weight& mu) const {
    auto it = spaces_.find(mu);
    return it == spaces_.end() ? nullptr : &it->second;
}

BigInt ClassicalModule::dimension() const {
    BigInt d = 0;
    for (const auto& [mu, k] : dims_) d += BigInt((unsigned long long)k);
    return d;
}

TwiningTable ClassicalModule::twining(const Involution& tau) const {
    if (tau.act(hw_) != hw_)
        throw std::invalid_argument("twining: highest weight must be tau-fixed");
    // J matrices per space: J b lives at tau(wt b); computed top-down.
    std::map<Weight, Mat> jmat;
    jmat[hw_] = {{Rational(1)}};
    // process in the same depth order as the construction
    std::vector<std::pair<long long, Weight>> order;
    for (const auto& [mu, sp] : spaces_) {
        Weight diff = hw_ - mu;
        Rational ht(0);
        for (const auto& x : rs_->alpha_coords(diff)) ht += x;
        order.emplace_back(ht.num().convert_to<long long>(), mu);
    }
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });

    for (const auto& [depth, mu] : order) {
        if (depth == 0) continue;
        const Space& sp = spaces_.at(mu);
        Weight tmu = tau.act(mu);
        const Space* tsp = space(tmu);
        if (!tsp) throw internal_check_error("twining: image space missing");
        Mat rows;
        for (std::size_t i = 0; i < sp.gen.size(); ++i) {
            int r = sp.gen[i];
            Weight up = mu + rs_->simple_root((std::size_t)r);
            // J b = f_{tau r} J(parent)
            const Mat& jup = jmat.at(up);
            const Row& jparent = jup[sp.parent[i]];
            // apply f_{tau r}: space tau(up) -> tau(up) - alpha_{tau r} = tau(mu)
            Weight tup = tau.act(up);
            const Space& sptup = spaces_.at(tup);
            auto fit = sptup.f_mat.find(tau(r));
            Row out = zero_row(tsp->gen.size());
            if (fit != sptup.f_mat.end()) {
                for (std::size_t j = 0; j < jparent.size(); ++j) {
                    if (jparent[j].is_zero()) continue;
                    out = axpy(std::move(out), jparent[j], fit->second[j]);
                }
            }
            rows.push_back(std::move(out));
        }
        jmat[mu] = std::move(rows);
    }

    TwiningTable t;
    t.hw = hw_;
    for (const auto& [mu, sp] : spaces_) {
        if (tau.act(mu) != mu) continue;
        const Mat& J = jmat.at(mu);
        Rational tr(0);
        for (std::size_t i = 0; i < sp.gen.size(); ++i) tr += J[i][i];
        if (!tr.is_integer()) throw internal_check_error("twining: non-integer trace");
        long long v = tr.num().convert_to<long long>();
        if (v != 0) t.jvals[mu] = v;
    }
    return t;
}

} // namespace qorbit
