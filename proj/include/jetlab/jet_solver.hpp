#ifndef JETLAB_JET_SOLVER_HPP
#define JETLAB_JET_SOLVER_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <jetlab/automorphisms.hpp>
#include <jetlab/detail/rational_system.hpp>
#include <jetlab/gauss_rat.hpp>
#include <jetlab/hypersurface.hpp>
#include <jetlab/multi_series.hpp>

namespace jetlab
{

/// Raised when jet data cannot come from an automorphism of M.
class unrealizable_jet : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

namespace detail
{

inline mpz_class factorial(unsigned n)
{
    mpz_class r = 1;
    for (unsigned k = 2; k <= n; ++k) {
        r *= k;
    }
    return r;
}

} // namespace detail

/// Barred derivatives a_n^j = conj(f_n^{(j)}(0)) and b_n^j = conj(g_n^{(j)}(0))
/// of a normal-form map, where f = sum_n f_n(z) w^n / n!.
struct JetData {
    unsigned max_order = 0;
    std::map<std::pair<unsigned, unsigned>, GaussRat> a;
    std::map<std::pair<unsigned, unsigned>, GaussRat> b;

    const GaussRat &a_at(unsigned n, unsigned j) const
    {
        return lookup(a, n, j, "a");
    }
    const GaussRat &b_at(unsigned n, unsigned j) const
    {
        return lookup(b, n, j, "b");
    }

private:
    static const GaussRat &lookup(const std::map<std::pair<unsigned, unsigned>, GaussRat> &m, unsigned n, unsigned j,
                                  const char *name)
    {
        auto it = m.find({n, j});
        if (it == m.end()) {
            throw std::out_of_range(std::string("jet entry ") + name + "_" + std::to_string(n) + "^"
                                    + std::to_string(j) + " not available");
        }
        return it->second;
    }
};

inline JetData extract_jet(const MapFG &H, unsigned max_order)
{
    validate_normal_form(H);
    const unsigned D = H.trunc_degree();
    if (max_order > D) {
        throw std::out_of_range("degree budget exceeded: jet order " + std::to_string(max_order)
                                + " needs truncation degree >= " + std::to_string(max_order));
    }
    JetData jet;
    jet.max_order = max_order;
    for (unsigned n = 0; n <= max_order; ++n) {
        const mpz_class nf = detail::factorial(n);
        for (unsigned j = 0; n + j <= D; ++j) {
            const GaussRat scale{Rational(nf * detail::factorial(j))};
            jet.a[{n, j}] = (H.f.coeff({j, n}) * scale).conj();
            jet.b[{n, j}] = (H.g.coeff({j, n}) * scale).conj();
        }
    }
    return jet;
}

/// The distinguished jet data
///   (1/a_0^1, 1/b_0^0, a_0^1, b_0^0, a_1^0, conj(a_1^0), Re b_2^0).
struct Lambda0 {
    GaussRat inv_a01;
    GaussRat inv_b00;
    GaussRat a01;
    GaussRat b00;
    GaussRat a10;
    GaussRat a10_bar;
    GaussRat re_b20;

    static Lambda0 make(const GaussRat &a01, const GaussRat &b00, const GaussRat &a10, const Rational &re_b20)
    {
        if (a01.is_zero() || b00.is_zero()) {
            throw unrealizable_jet("jet not realizable by an automorphism of M: a_0^1 and b_0^0 must be nonzero");
        }
        return {inverse(a01), inverse(b00), a01, b00, a10, a10.conj(), GaussRat(re_b20)};
    }

    std::array<GaussRat, 7> as_tuple() const
    {
        return {inv_a01, inv_b00, a01, b00, a10, a10_bar, re_b20};
    }

    static Lambda0 from_tuple(const std::array<GaussRat, 7> &t)
    {
        return {t[0], t[1], t[2], t[3], t[4], t[5], t[6]};
    }

    friend bool operator==(const Lambda0 &x, const Lambda0 &y)
    {
        return x.as_tuple() == y.as_tuple();
    }
};

inline Lambda0 lambda0_from_jet(const JetData &j)
{
    return Lambda0::make(j.a_at(0, 1), j.b_at(0, 0), j.a_at(1, 0), j.b_at(2, 0).re());
}

/// Enforces the constraints every automorphism satisfies: a_0^1 unimodular,
/// b_0^0 real nonzero, and the tuple internally consistent.
inline void validate(const Lambda0 &l)
{
    auto fail = [](const std::string &why) {
        throw unrealizable_jet("jet not realizable by an automorphism of M: " + why);
    };
    if (l.a01.norm() != 1) {
        fail("a_0^1 = " + l.a01.to_string() + " is not unimodular");
    }
    if (!l.b00.is_real() || l.b00.is_zero()) {
        fail("b_0^0 = " + l.b00.to_string() + " is not a nonzero real");
    }
    if (l.inv_a01 * l.a01 != GaussRat(1) || l.inv_b00 * l.b00 != GaussRat(1)) {
        fail("reciprocal entries do not match");
    }
    if (l.a10_bar != l.a10.conj()) {
        fail("entry 6 is not the conjugate of a_1^0");
    }
    if (!l.re_b20.is_real()) {
        fail("Re b_2^0 must be real");
    }
}

/// eps = conj(a_0^1), r = conj(b_0^0), alpha = conj(a_1^0) / conj(a_0^1),
/// s = Re(conj(b_2^0)) / conj(b_0^0).
inline AutParams params_from_lambda(const Lambda0 &l)
{
    validate(l);
    const GaussRat eps = l.a01.conj();
    const Rational r = l.b00.re();
    return {eps, r, l.a10_bar / eps, l.re_b20.re() / r};
}

inline AutParams params_from_jet(const JetData &j)
{
    return params_from_lambda(lambda0_from_jet(j));
}

/// The 4x4 matrix acting on (a_n^0, a_n^1, b_n^0, b_n^1) at step n.
struct AnMatrix {
    unsigned n;
    std::array<std::array<GaussRat, 4>, 4> entries;

    std::vector<std::vector<GaussRat>> rows() const
    {
        std::vector<std::vector<GaussRat>> out;
        for (const auto &r : entries) {
            out.emplace_back(r.begin(), r.end());
        }
        return out;
    }
};

inline AnMatrix build_A_n(unsigned n, const GaussRat &a01, const GaussRat &b00)
{
    if (n < 1) {
        throw std::invalid_argument("A_n needs n >= 1");
    }
    if (a01.norm() != 1 || !b00.is_real() || b00.is_zero()) {
        throw std::invalid_argument("A_n needs unimodular a_0^1 and real nonzero b_0^0");
    }
    const GaussRat c = b00 / a01;
    const GaussRat i = GaussRat::i();
    const long N = n;
    AnMatrix m{n, {}};
    m.entries[0][1] = GaussRat(4 * N) * c;
    m.entries[0][2] = GaussRat(-2 * N * N);
    m.entries[1][0] = GaussRat(-6 * (N * N - 1)) * i * c;
    m.entries[2][3] = GaussRat(6 * (N * N - 1));
    m.entries[3][1] = GaussRat(18 * (N * N + 2 * N)) * i * c;
    m.entries[3][2] = GaussRat(-6 * (2 * N * N * N + 3 * N * N - 2 * N)) * i;
    return m;
}

/// Determinant by cofactor expansion.
inline GaussRat det_A_n(const AnMatrix &m)
{
    return detail::cofactor_determinant(m.rows());
}

/// -432 (b_0^0)^2 / (a_0^1)^2 (n-2)(n-1)^2 n^2 (n+1)^2 (n+2).
inline GaussRat det_A_n_closed_form(unsigned n, const GaussRat &a01, const GaussRat &b00)
{
    const mpz_class N = n;
    const mpz_class poly = (N - 2) * (N - 1) * (N - 1) * N * N * (N + 1) * (N + 1) * (N + 2);
    return GaussRat(Rational(-432 * poly)) * (b00 * b00) / (a01 * a01);
}

/// True iff the full pairs (f, w g) agree in every Taylor coefficient of
/// total degree <= k.
inline bool determinacy_check(const MapFG &H1, const MapFG &H2, unsigned k)
{
    if (H1.trunc_degree() < k || H2.trunc_degree() < k) {
        throw std::invalid_argument("determinacy_check: maps must be known through degree " + std::to_string(k));
    }
    const auto f1 = H1.f.truncated(k), f2 = H2.f.truncated(k);
    if (f1 != f2) {
        return false;
    }
    if (k == 0) {
        return true;
    }
    return H1.g.truncated(k - 1) == H2.g.truncated(k - 1);
}

/// Summary of one order of the reconstruction.
struct StepReport {
    unsigned n = 0;
    unsigned f_degree_bound = 0;
    unsigned g_degree_bound = 0;
    unsigned escalations = 0;
    std::size_t unknowns = 0;  // real unknowns
    std::size_t equations = 0; // real equations
    std::size_t rank = 0;
    std::vector<GaussRat> f_n; // coefficients of f_n(z), index = power of z
    std::vector<GaussRat> g_n;
};

struct Reconstruction {
    MapFG map; // truncated at total degree N
    std::vector<StepReport> steps;

    /// Barred derivative conj(f_n^{(j)}(0)) read off the solved polynomials.
    GaussRat a(unsigned n, unsigned j) const
    {
        return barred(steps.at(n).f_n, j);
    }
    GaussRat b(unsigned n, unsigned j) const
    {
        return barred(steps.at(n).g_n, j);
    }

private:
    static GaussRat barred(const std::vector<GaussRat> &p, unsigned j)
    {
        if (j >= p.size()) {
            return GaussRat();
        }
        return (p[j] * GaussRat(Rational(detail::factorial(j)))).conj();
    }
};

namespace detail
{

inline MultiSeries bivariate_s_power_table(const MultiSeries &s_univariate, unsigned K)
{
    return s_univariate.remap_exponents(2, K, [](const MultiSeries::Exponents &e) {
        return MultiSeries::Exponents{e[0], e[0]};
    });
}

// Normal-form map from the coefficient polynomials F_k = f_k / k! and
// G_k = g_k / k!, k < count.
inline MapFG map_from_pieces(const std::vector<std::vector<GaussRat>> &F, const std::vector<std::vector<GaussRat>> &G,
                             std::size_t count, unsigned D)
{
    std::vector<std::pair<MultiSeries::Exponents, GaussRat>> ft, gt;
    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t j = 0; j < F[k].size(); ++j) {
            if (!F[k][j].is_zero() && j + k <= D) {
                ft.push_back({{static_cast<unsigned>(j), static_cast<unsigned>(k)}, F[k][j]});
            }
        }
        for (std::size_t j = 0; j < G[k].size(); ++j) {
            if (!G[k][j].is_zero() && j + k <= D) {
                gt.push_back({{static_cast<unsigned>(j), static_cast<unsigned>(k)}, G[k][j]});
            }
        }
    }
    return {MultiSeries::from_terms(2, D, ft), MultiSeries::from_terms(2, D, gt)};
}

// The tau^n coefficient of Phi read as a bivariate series in (z, chi).
inline MultiSeries tau_slice(const MultiSeries &phi, unsigned n, unsigned K)
{
    MultiSeries out(2, K);
    std::unordered_map<MultiSeries::Key, GaussRat> acc;
    for (const auto &t : phi.terms()) {
        if (phi.exponent(t.key, var_tau) != n) {
            continue;
        }
        const unsigned j = phi.exponent(t.key, var_z), k = phi.exponent(t.key, var_chi);
        if (j + k <= K) {
            acc[out.encode({j, k})] = t.coeff;
        }
    }
    out.adopt(std::move(acc));
    return out;
}

// Linear part of the tau^n coefficient of Phi in the order-n unknowns
// F_n(z) = sum c_j z^j and G_n(z) = sum d_j z^j (coefficient normalization):
//   -S^{n+1} G_n(z) + S conj(G_n)(chi) + b S'(z chi) (a chi S^n F_n(z) + (z / a) conj(F_n)(chi))
// where S = S(z chi), a = a_0^1, b = b_0^0. Valid for n >= 1, where f_0 = z / a
// and g_0 = b are already fixed.
class OrderNLinearPart
{
public:
    OrderNLinearPart(unsigned n, const GaussRat &a, const GaussRat &b, unsigned K) : K_(K)
    {
        const auto s1 = s_series(K + 1);
        S_ = bivariate_s_power_table(s1.truncated(K), K);
        const auto Sp = bivariate_s_power_table(partial_derivative(s1, VarIndex{0}), K);
        MultiSeries Sn = MultiSeries::constant(2, K, GaussRat(1));
        for (unsigned k = 0; k < n; ++k) {
            Sn = Sn * S_;
        }
        Sn1_ = Sn * S_;
        const auto z = MultiSeries::variable(2, K, var_z);
        const auto chi = MultiSeries::variable(2, K, VarIndex{1});
        f_direct_ = b * a * (Sp * (chi * Sn));
        f_conj_ = b * inverse(a) * (Sp * z);
    }

    // Contribution of c z^j in F_n (c a Gaussian rational scalar).
    MultiSeries f_column(unsigned j, const GaussRat &c) const
    {
        return c * shift(f_direct_, j, 0) + c.conj() * shift(f_conj_, 0, j);
    }

    // Contribution of d z^j in G_n.
    MultiSeries g_column(unsigned j, const GaussRat &d) const
    {
        return -(d * shift(Sn1_, j, 0)) + d.conj() * shift(S_, 0, j);
    }

private:
    MultiSeries shift(const MultiSeries &s, unsigned dz, unsigned dchi) const
    {
        return MultiSeries::multiply(s, MultiSeries::monomial(2, K_, {dz, dchi}, GaussRat(1)), K_);
    }

    unsigned K_;
    MultiSeries S_{2, 0};
    MultiSeries Sn1_{2, 0};
    MultiSeries f_direct_{2, 0};
    MultiSeries f_conj_{2, 0};
};

struct StepSolve {
    SolveStatus status;
    StepReport report;
    std::vector<GaussRat> F; // coefficient normalization
    std::vector<GaussRat> G;
};

inline StepSolve solve_order(const Lambda0 &l, unsigned n, const std::vector<std::vector<GaussRat>> &F,
                             const std::vector<std::vector<GaussRat>> &G, unsigned df, unsigned dg)
{
    const unsigned K = std::max(df + 2, 7U);
    const unsigned Dint = n + K;
    const MapFG partial = map_from_pieces(F, G, n, Dint);
    const MultiSeries base = tau_slice(phi_residual(partial), n, K);
    const OrderNLinearPart lin(n, l.a01, l.b00, K);

    // Real unknowns: re/im of c_0..c_df, then re/im of d_0..d_dg.
    std::vector<MultiSeries> columns;
    const GaussRat one(1), i = GaussRat::i();
    for (unsigned j = 0; j <= df; ++j) {
        columns.push_back(lin.f_column(j, one));
        columns.push_back(lin.f_column(j, i));
    }
    for (unsigned j = 0; j <= dg; ++j) {
        columns.push_back(lin.g_column(j, one));
        columns.push_back(lin.g_column(j, i));
    }
    const std::size_t nu = columns.size();

    std::vector<std::vector<Rational>> A;
    std::vector<Rational> rhs;
    MultiSeries probe(2, K);
    for (unsigned deg = 0; deg <= K; ++deg) {
        for (unsigned j = 0; j <= deg; ++j) {
            const auto key = probe.encode({j, deg - j});
            std::vector<Rational> re_row(nu), im_row(nu);
            for (std::size_t c = 0; c < nu; ++c) {
                const GaussRat v = columns[c].coeff_by_key(key);
                re_row[c] = v.re();
                im_row[c] = v.im();
            }
            const GaussRat b0 = base.coeff_by_key(key);
            A.push_back(std::move(re_row));
            rhs.push_back(-b0.re());
            A.push_back(std::move(im_row));
            rhs.push_back(-b0.im());
        }
    }
    // Jet data pinned by lambda_0 at this order.
    if (n == 1) {
        // f_1(0) = conj(a_1^0).
        std::vector<Rational> re_row(nu), im_row(nu);
        re_row[0] = 1;
        im_row[1] = 1;
        A.push_back(std::move(re_row));
        rhs.push_back(l.a10_bar.re());
        A.push_back(std::move(im_row));
        rhs.push_back(l.a10_bar.im());
    } else if (n == 2) {
        // Re g_2(0) = Re b_2^0, and g_2 = 2 G_2.
        std::vector<Rational> row(nu);
        row[2 * (df + 1)] = 2;
        A.push_back(std::move(row));
        rhs.push_back(l.re_b20.re());
    }

    StepSolve out{};
    out.report.n = n;
    out.report.f_degree_bound = df;
    out.report.g_degree_bound = dg;
    out.report.unknowns = nu;
    out.report.equations = A.size();
    const auto res = solve_exact(std::move(A), std::move(rhs));
    out.status = res.status;
    out.report.rank = res.rank;
    if (res.status != SolveStatus::unique) {
        return out;
    }
    for (unsigned j = 0; j <= df; ++j) {
        out.F.emplace_back(res.x[2 * j], res.x[2 * j + 1]);
    }
    for (unsigned j = 0; j <= dg; ++j) {
        out.G.emplace_back(res.x[2 * (df + 1) + 2 * j], res.x[2 * (df + 1) + 2 * j + 1]);
    }
    return out;
}

inline std::vector<GaussRat> scaled(const std::vector<GaussRat> &p, unsigned n)
{
    const GaussRat s{Rational(factorial(n))};
    std::vector<GaussRat> out;
    for (const auto &c : p) {
        out.push_back(c * s);
    }
    while (!out.empty() && out.back().is_zero()) {
        out.pop_back();
    }
    return out;
}

} // namespace detail

/// Rebuilds the unique automorphism with the given distinguished jet data,
/// order by order in w through w^N.
///
/// Order 0 is closed form: f_0 = z / a_0^1, g_0 = b_0^0. Each later order
/// makes the tau^n coefficient of Phi vanish: the coefficients of f_n and
/// g_n are split into rational real and imaginary parts, so conjugation is
/// linear and every (z^j chi^k) coefficient yields two rational equations.
/// Orders 1 and 2 add the data lambda_0 pins there (f_1(0) = conj(a_1^0) and
/// Re g_2(0) = Re b_2^0). The returned map is truncated at total degree N;
/// the full polynomials f_n, g_n are in the step reports.
inline Reconstruction reconstruct(const Lambda0 &l, unsigned N)
{
    validate(l);
    std::vector<std::vector<GaussRat>> F, G; // coefficient normalization
    Reconstruction out{identity_map(N), {}};

    F.push_back({GaussRat(), l.inv_a01});
    G.push_back({l.b00});
    {
        StepReport r;
        r.n = 0;
        r.f_degree_bound = 1;
        r.g_degree_bound = 0;
        r.f_n = F[0];
        r.g_n = G[0];
        out.steps.push_back(std::move(r));
    }

    for (unsigned n = 1; n <= N; ++n) {
        unsigned df = n + 1, dg = n;
        const unsigned cap = 2 * n + 2;
        unsigned escalations = 0;
        detail::StepSolve s;
        while (true) {
            s = detail::solve_order(l, n, F, G, df, dg);
            if (s.status == detail::SolveStatus::unique) {
                break;
            }
            if (df + 2 > cap) {
                if (s.status == detail::SolveStatus::inconsistent) {
                    throw unrealizable_jet("lambda_0 not realizable: inconsistent system at order " + std::to_string(n));
                }
                throw std::runtime_error("degree bound too low: singular system at order " + std::to_string(n));
            }
            df += 2;
            dg += 2;
            ++escalations;
        }
        s.report.escalations = escalations;
        F.push_back(s.F);
        G.push_back(s.G);
        s.report.f_n = detail::scaled(s.F, n);
        s.report.g_n = detail::scaled(s.G, n);
        out.steps.push_back(std::move(s.report));
    }
    out.map = detail::map_from_pieces(F, G, F.size(), N);
    return out;
}

} // namespace jetlab

#endif
