#include "fk/polyfit.hpp"

#include <sstream>
#include <stdexcept>

#include "fk/summatory.hpp"

namespace fk {

void Poly::normalize() {
    while (!coefficients.empty() && coefficients.back() == 0) coefficients.pop_back();
}

Rat Poly::eval(const Rat& at) const {
    Rat acc = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
        acc = acc * at + *it;
    return acc;
}

std::string Poly::pretty(const std::string& var) const {
    if (coefficients.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int m = degree(); m >= 0; --m) {
        const Rat& c = coefficients[m];
        if (c == 0) continue;
        Rat a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool unit = (a == 1);
        if (!unit || m == 0) os << a.get_str();
        if (m > 0) {
            if (!unit) os << " ";
            os << var;
            if (m > 1) os << "^" << m;
        }
    }
    if (first) return "0";
    return os.str();
}

int tau_index(const BigNat& x, unsigned long k, std::uint64_t l) {
    if (l < 2) throw std::domain_error("tau_index: l must be >= 2");
    if (x < 1) throw std::domain_error("tau_index: x must be >= 1");
    int tau = -1;
    for (unsigned long i = 0; i <= k; ++i) {
        // survives iff (l+1)^i <= floor(x / l^(k-i))
        BigNat quotient = x / ipow(l, k - i);
        if (ipow(l + 1, i) <= quotient)
            tau = static_cast<int>(i);
        else
            break; // condition is monotone in i
    }
    return tau;
}

std::vector<BigNat> node_floors(const BigNat& x, std::uint64_t l, unsigned j, int tau) {
    long t = floor_log(x, l);
    if (static_cast<long>(j) > t - 1)
        throw std::domain_error("node_floors: j must be <= t - 1");
    std::vector<BigNat> nodes;
    nodes.reserve(tau + 1);
    for (int i = 0; i <= tau; ++i)
        nodes.push_back(x / ipow(l, static_cast<unsigned long>(t - j - i)));
    return nodes;
}

namespace {

struct NodeContext {
    long t;
    unsigned long k; // t - j
    int tau;
    std::vector<BigNat> nodes;
};

NodeContext make_context(const BigNat& x, std::uint64_t l, unsigned j) {
    if (l < 2) throw std::domain_error("polyfit: l must be >= 2");
    NodeContext ctx;
    ctx.t = floor_log(x, l);
    if (static_cast<long>(j) > ctx.t - 1)
        throw std::domain_error("polyfit: j must be <= floor(log_l x) - 1");
    ctx.k = static_cast<unsigned long>(ctx.t - j);
    ctx.tau = tau_index(x, ctx.k, l);
    // the i = 0 term has l^k <= l^t <= x, so tau >= 0 whenever j <= t-1
    if (ctx.tau < 0) throw std::logic_error("polyfit: empty separation sum");
    ctx.nodes = node_floors(x, l, j, ctx.tau);
    return ctx;
}

std::uint64_t node_as_u64(const BigNat& node) {
    if (!node.fits_ulong_p())
        throw std::length_error("polyfit: node exceeds summatory budget");
    return node.get_ui();
}

BigNat rat_to_nat(const Rat& r, const char* what) {
    if (r.get_den() != 1 || r < 0)
        throw std::logic_error(std::string(what) + ": expected a nonnegative integer");
    return r.get_num();
}

} // namespace

PolynomialReport poly_via_stirling(const BigNat& x, std::uint64_t l, unsigned j) {
    NodeContext ctx = make_context(x, l, j);
    PolynomialReport rep;
    rep.x = x;
    rep.l = l;
    rep.j = j;
    rep.t = ctx.t;
    rep.tau = ctx.tau;
    rep.nodes = ctx.nodes;

    SummatoryEvaluator ev(l + 1);
    for (int i = 0; i <= ctx.tau; ++i)
        rep.kappa.push_back(ev.F(node_as_u64(ctx.nodes[i]), static_cast<unsigned>(i)));

    StirlingTable stirling(static_cast<unsigned>(ctx.tau));
    BigNat factorial = 1;
    std::vector<BigNat> factorials{1}; // i!
    for (int i = 1; i <= ctx.tau; ++i) {
        factorial *= i;
        factorials.push_back(factorial);
    }
    rep.poly_in_k.coefficients.assign(ctx.tau + 1, Rat(0));
    for (int m = 0; m <= ctx.tau; ++m) {
        Rat v = 0;
        for (int i = m; i <= ctx.tau; ++i)
            v += make_rat(BigInt(rep.kappa[i]) * stirling.s(i, m), factorials[i]);
        rep.poly_in_k.coefficients[m] = v;
    }
    rep.poly_in_k.normalize();

    rep.value = rat_to_nat(rep.poly_in_k.eval(Rat(static_cast<long>(ctx.k))),
                           "poly_via_stirling value");
    return rep;
}

PolynomialReport poly_via_solve(const BigNat& x, std::uint64_t l, unsigned j) {
    NodeContext ctx = make_context(x, l, j);
    PolynomialReport rep;
    rep.x = x;
    rep.l = l;
    rep.j = j;
    rep.t = ctx.t;
    rep.tau = ctx.tau;
    rep.nodes = ctx.nodes;

    SummatoryEvaluator ev(l);
    for (int i = 0; i <= ctx.tau; ++i)
        rep.lambda.push_back(ev.F(node_as_u64(ctx.nodes[i]), static_cast<unsigned>(i)));

    // lambda = w B with b_{i,m} = (i+j)^m, i.e. one equation
    // sum_m w_m (i+j)^m = lambda_i per node; rational Gaussian elimination
    // with partial pivoting on the largest remaining entry by absolute value.
    int n = ctx.tau + 1;
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n + 1, Rat(0)));
    for (int i = 0; i < n; ++i) {
        for (int m = 0; m < n; ++m)
            a[i][m] = Rat(ipow(i + j, static_cast<unsigned long>(m)));
        a[i][n] = Rat(rep.lambda[i]);
    }

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (abs(a[row][col]) > abs(a[pivot][col])) pivot = row;
        if (a[pivot][col] == 0)
            throw std::logic_error("poly_via_solve: singular system (distinct nodes expected)");
        std::swap(a[col], a[pivot]);
        for (int row = col + 1; row < n; ++row) {
            if (a[row][col] == 0) continue;
            Rat factor = a[row][col] / a[col][col];
            for (int c = col; c <= n; ++c) a[row][c] -= factor * a[col][c];
        }
    }
    rep.poly_in_t.coefficients.assign(n, Rat(0));
    for (int row = n - 1; row >= 0; --row) {
        Rat v = a[row][n];
        for (int c = row + 1; c < n; ++c) v -= a[row][c] * rep.poly_in_t.coefficients[c];
        rep.poly_in_t.coefficients[row] = v / a[row][row];
    }
    rep.poly_in_t.normalize();

    rep.value = rat_to_nat(rep.poly_in_t.eval(Rat(ctx.t)), "poly_via_solve value");
    return rep;
}

PolynomialReport poly_report(const BigNat& x, std::uint64_t l, unsigned j) {
    PolynomialReport stirling = poly_via_stirling(x, l, j);
    PolynomialReport solve = poly_via_solve(x, l, j);
    if (stirling.value != solve.value || stirling.nodes != solve.nodes ||
        stirling.tau != solve.tau)
        throw std::logic_error("poly_report: route disagreement");
    // the k-polynomial at t - j and the t-polynomial at t are the same number
    PolynomialReport rep = std::move(solve);
    rep.kappa = std::move(stirling.kappa);
    rep.poly_in_k = std::move(stirling.poly_in_k);
    return rep;
}

BandBounds bounds_for_band(unsigned j, std::uint64_t l) {
    if (l < 2) throw std::domain_error("bounds_for_band: l must be >= 2");
    // largest i whose term survives anywhere in the band, from the upper
    // band edge: (l+1)^i <= l^(i+j+1) - 1
    unsigned tau_band = 0;
    for (unsigned i = 1;; ++i) {
        if (ipow(l + 1, i) <= ipow(l, i + j + 1) - 1)
            tau_band = i;
        else
            break;
    }
    unsigned m = j + std::max(tau_band, 1u); // t = m, so k = t - j covers tau_band
    BandBounds b;
    b.j = j;
    b.l = l;
    b.lower = poly_via_solve(ipow(l, m), l, j).poly_in_t;
    b.upper = poly_via_solve(ipow(l, m + 1) - 1, l, j).poly_in_t;
    return b;
}

bool verify_band(const BandBounds& bounds, long t_min, long t_max) {
    for (long t = std::max<long>(t_min, bounds.j + 1); t <= t_max; ++t) {
        unsigned k = static_cast<unsigned>(t - bounds.j);
        BigNat x_lo = ipow(bounds.l, static_cast<unsigned long>(t));
        BigNat x_hi = ipow(bounds.l, static_cast<unsigned long>(t + 1)) - 1;
        Rat lo = bounds.lower.eval(Rat(t));
        Rat hi = bounds.upper.eval(Rat(t));
        if (lo > hi) return false;
        if (!x_hi.fits_ulong_p()) throw std::length_error("verify_band: range too large");
        BigNat f_lo = F_separation(x_lo.get_ui(), k, bounds.l);
        BigNat f_hi = F_separation(x_hi.get_ui(), k, bounds.l);
        if (Rat(f_lo) != lo || Rat(f_hi) != hi) return false;
    }
    return true;
}

} // namespace fk
