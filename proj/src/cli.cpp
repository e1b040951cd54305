#include "fk/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fk/analytic.hpp"
#include "fk/counts.hpp"
#include "fk/polyfit.hpp"
#include "fk/summatory.hpp"

namespace fk::cli {

using json = nlohmann::ordered_json;

namespace {

std::string real_str(const Real& v, int digits) {
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

std::vector<std::string> rat_strings(const std::vector<Rat>& rats) {
    std::vector<std::string> out;
    out.reserve(rats.size());
    for (const auto& r : rats) out.push_back(r.get_str());
    return out;
}

std::vector<std::string> nat_strings(const std::vector<BigNat>& nats) {
    std::vector<std::string> out;
    out.reserve(nats.size());
    for (const auto& n : nats) out.push_back(n.get_str());
    return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::uint64_t threshold_to_u64(const BigNat& x, const char* what) {
    if (!x.fits_ulong_p())
        throw std::domain_error(std::string(what) + ": x too large for this algorithm");
    return x.get_ui();
}

double elapsed_ms(const std::chrono::steady_clock::time_point& start) {
    auto end = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(end - start).count();
}

// ---------------------------------------------------------------------------
// count
// ---------------------------------------------------------------------------

struct CountOptions {
    std::uint64_t n = 1;
    unsigned k = 1;
    std::uint64_t l = 2;
    std::string algorithm = "auto";
    std::string format = "plain";
};

CountValue dispatch_count(const CountOptions& o) {
    const std::string& a = o.algorithm;
    if (a == "auto") {
        if (o.l == 1) return d_k(o.n, o.k);
        if (o.l == 2) return f_macmahon(factorize(o.n), o.k);
        return f_recursive(o.n, o.k, o.l);
    }
    if (a == "oracle") return oracle_count(o.n, o.k, o.l);
    if (a == "recursive") return f_recursive(o.n, o.k, o.l);
    if (a == "macmahon") {
        if (o.l != 2) throw std::domain_error("macmahon computes f_k(n, 2); use --l 2");
        return f_macmahon(factorize(o.n), o.k);
    }
    if (a == "separation") return f_separation(o.n, o.k, o.l, SeparationVariant::kSingleLevel);
    if (a == "elimination")
        return f_separation(o.n, o.k, o.l, SeparationVariant::kFullElimination);
    if (a == "dk") {
        if (o.l != 1) throw std::domain_error("dk computes d_k(n) = f_k(n, 1); use --l 1");
        return d_k(o.n, o.k);
    }
    if (a == "transform") {
        if (o.l == 1) return binomial_transform_d_from_f(o.n, o.k);
        if (o.l == 2) return inverse_transform_f_from_d(o.n, o.k);
        throw std::domain_error("transform links l = 1 and l = 2 only");
    }
    if (a == "kalmar") {
        if (o.k != 0) throw std::domain_error("kalmar sums over all k; pass --k 0");
        return kalmar_f(o.n);
    }
    throw std::domain_error("unknown algorithm: " + a);
}

int run_count(const CountOptions& o, std::ostream& out) {
    CountValue v = dispatch_count(o);
    if (o.format == "json") {
        json j;
        j["command"] = "count";
        j["n"] = o.n;
        j["k"] = o.k;
        j["l"] = o.l;
        j["algorithm"] = o.algorithm;
        j["value"] = v.get_str();
        out << j.dump(2) << "\n";
    } else {
        out << v.get_str() << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// summatory
// ---------------------------------------------------------------------------

struct SummatoryOptions {
    std::string x_text;
    unsigned k = 1;
    std::uint64_t l = 2;
    std::string algorithm = "auto";
    unsigned split = 0;
    std::string format = "plain";
};

SummatoryValue dispatch_summatory(const SummatoryOptions& o, std::uint64_t x) {
    const std::string& a = o.algorithm;
    unsigned j = o.split ? o.split : std::max(1u, o.k / 2);
    if (a == "auto") {
        if (o.k <= 1) return F_naive(x, o.k, o.l);
        if (o.k == 2) return F2_closed(x, o.l);
        return F_hyperbola(x, o.k, o.l, j);
    }
    if (a == "naive") return F_naive(x, o.k, o.l);
    if (a == "separation") return F_separation(x, o.k, o.l, SeparationVariant::kSingleLevel);
    if (a == "elimination")
        return F_separation(x, o.k, o.l, SeparationVariant::kFullElimination);
    if (a == "hyperbola") return F_hyperbola(x, o.k, o.l, j);
    if (a == "doubling") return F_doubling(x, o.k, o.l);
    if (a == "f2") {
        if (o.k != 2) throw std::domain_error("f2 closed form requires k = 2");
        return F2_closed(x, o.l);
    }
    if (a == "f2-literal") {
        if (o.k != 2) throw std::domain_error("f2-literal requires k = 2");
        return F2_closed(x, o.l, /*compact_literal=*/true);
    }
    throw std::domain_error("unknown algorithm: " + a);
}

int run_summatory(const SummatoryOptions& o, std::ostream& out) {
    BigNat xb = parse_threshold(o.x_text);
    std::uint64_t x = threshold_to_u64(xb, "summatory");
    SummatoryValue v = dispatch_summatory(o, x);
    if (o.format == "json") {
        json j;
        j["command"] = "summatory";
        j["x"] = xb.get_str();
        j["k"] = o.k;
        j["l"] = o.l;
        j["algorithm"] = o.algorithm;
        j["value"] = v.get_str();
        out << j.dump(2) << "\n";
    } else {
        out << v.get_str() << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// poly
// ---------------------------------------------------------------------------

struct PolyOptions {
    std::string x_text;
    std::uint64_t l = 2;
    unsigned j = 0;
    std::string format = "plain";
};

int run_poly(const PolyOptions& o, std::ostream& out) {
    BigNat x = parse_threshold(o.x_text);
    PolynomialReport rep = poly_report(x, o.l, o.j);
    if (o.format == "json") {
        json j;
        j["command"] = "poly";
        j["x"] = rep.x.get_str();
        j["l"] = rep.l;
        j["j"] = rep.j;
        j["t"] = rep.t;
        j["tau"] = rep.tau;
        j["nodes"] = nat_strings(rep.nodes);
        j["kappa"] = nat_strings(rep.kappa);
        j["lambda"] = nat_strings(rep.lambda);
        j["poly_in_k"] = rat_strings(rep.poly_in_k.coefficients);
        j["poly_in_t"] = rat_strings(rep.poly_in_t.coefficients);
        j["value"] = rep.value.get_str();
        out << j.dump(2) << "\n";
    } else {
        out << "x = " << rep.x.get_str() << "\n";
        out << "l = " << rep.l << "  j = " << rep.j << "\n";
        out << "t = " << rep.t << "  tau = " << rep.tau << "\n";
        out << "node floors: " << join(nat_strings(rep.nodes), ", ") << "\n";
        out << "kappa:       " << join(nat_strings(rep.kappa), ", ") << "\n";
        out << "lambda:      " << join(nat_strings(rep.lambda), ", ") << "\n";
        out << "poly in k (ascending): " << join(rat_strings(rep.poly_in_k.coefficients), ", ")
            << "\n";
        out << "  = " << rep.poly_in_k.pretty("k") << "\n";
        out << "poly in t (ascending): " << join(rat_strings(rep.poly_in_t.coefficients), ", ")
            << "\n";
        out << "  = " << rep.poly_in_t.pretty("t") << "\n";
        out << "value = " << rep.value.get_str() << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

struct BoundsOptions {
    unsigned j = 0;
    std::uint64_t l = 2;
    long t_min = 0;
    long t_max = 0; // 0: no verification
    std::string format = "plain";
};

int run_bounds(const BoundsOptions& o, std::ostream& out) {
    BandBounds b = bounds_for_band(o.j, o.l);
    bool verified = false;
    if (o.t_max > 0) {
        if (!verify_band(b, o.t_min, o.t_max))
            throw std::domain_error("band bounds failed endpoint verification");
        verified = true;
    }
    if (o.format == "json") {
        json j;
        j["command"] = "bounds";
        j["j"] = o.j;
        j["l"] = o.l;
        j["lower"] = rat_strings(b.lower.coefficients);
        j["upper"] = rat_strings(b.upper.coefficients);
        j["lower_pretty"] = b.lower.pretty("t");
        j["upper_pretty"] = b.upper.pretty("t");
        if (verified) {
            j["verified_t_min"] = std::max<long>(o.t_min, o.j + 1);
            j["verified_t_max"] = o.t_max;
        }
        out << j.dump(2) << "\n";
    } else {
        out << "lower(t) = " << b.lower.pretty("t") << "\n";
        out << "upper(t) = " << b.upper.pretty("t") << "\n";
        if (verified)
            out << "endpoints verified exactly for t in [" << std::max<long>(o.t_min, o.j + 1)
                << ", " << o.t_max << "]\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// identity
// ---------------------------------------------------------------------------

int run_identity(std::uint64_t limit, const std::string& format, std::ostream& out) {
    IdentityReport rep = identity_suite(limit);
    if (format == "json") {
        json j;
        j["command"] = "identity";
        j["limit"] = rep.limit;
        j["ok"] = rep.ok;
        j["failure"] = rep.failure;
        out << j.dump(2) << "\n";
    } else if (rep.ok) {
        out << "mu, Mertens, Lambda/log and Pi identities hold exactly for all arguments <= "
            << rep.limit << "\n";
    } else {
        out << rep.failure << "\n";
    }
    return rep.ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

struct ScanOptions {
    std::uint64_t limit = 20'000'000;
    bool serial = false;
    std::string csv_path;
    std::uint64_t sample = 0;
    std::string format = "plain";
};

int run_scan(const ScanOptions& o, std::ostream& out) {
    std::vector<ScanSample> samples;
    std::vector<ScanSample>* samples_ptr = nullptr;
    std::uint64_t step = 0;
    if (!o.csv_path.empty()) {
        step = o.sample ? o.sample : std::max<std::uint64_t>(1, o.limit / 1000);
        samples_ptr = &samples;
    }

    ErrorScanResult r;
    std::string kernel;
    const char* cache_dir = std::getenv("FK_CACHE_DIR");
    if (cache_dir && *cache_dir) {
        std::filesystem::path dir(cache_dir);
        std::filesystem::create_directories(dir);
        std::filesystem::path path = dir / ("fk_d2_" + std::to_string(o.limit) + ".tbl");
        DkTable table;
        if (std::filesystem::exists(path)) {
            table = DkTable::load_file(path.string());
        } else {
            table = d_k_sieve(o.limit, 2);
            table.dump_file(path.string());
        }
        r = error_scan_f2_from_table(table, samples_ptr, step);
        kernel = "cached-table";
    } else if (o.serial) {
        r = error_scan_f2_serial(o.limit, samples_ptr, step);
        kernel = "serial";
    } else {
        r = error_scan_f2(o.limit, samples_ptr, step);
        kernel = "parallel";
    }

    if (!o.csv_path.empty()) {
        std::ofstream csv(o.csv_path);
        if (!csv) throw std::runtime_error("cannot open csv file: " + o.csv_path);
        write_scan_csv(csv, samples);
    }

    if (o.format == "json") {
        json j;
        j["command"] = "scan";
        j["limit"] = r.limit;
        j["kernel"] = kernel;
        j["max_abs_error"] = r.max_abs_error;
        j["argmax_x"] = r.argmax_x;
        j["f2_at_argmax"] = r.f2_at_argmax.get_str();
        out << j.dump(2) << "\n";
    } else {
        out << "limit = " << r.limit << " (" << kernel << " kernel)\n";
        out << std::setprecision(10) << "max |delta| = " << r.max_abs_error << " at x = "
            << r.argmax_x << "\n";
        out << "F_2(argmax) = " << r.f2_at_argmax.get_str() << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// constants
// ---------------------------------------------------------------------------

int run_constants(int precision, const std::string& format, std::ostream& out) {
    KalmarConstants c = kalmar_constants(precision);
    Real residual = abs(zeta(c.rho, precision + 5) - 2);
    if (format == "json") {
        json j;
        j["command"] = "constants";
        j["precision"] = c.precision;
        j["rho"] = real_str(c.rho, precision);
        j["K"] = real_str(c.K, precision);
        j["zeta_rho_residual"] = real_str(residual, 3);
        out << j.dump(2) << "\n";
    } else {
        out << "rho = " << real_str(c.rho, precision) << "\n";
        out << "K   = " << real_str(c.K, precision) << "\n";
        out << "|zeta(rho) - 2| = " << real_str(residual, 3) << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchOptions {
    std::string grid = "1000,10000,100000,1000000";
    unsigned k = 2;
    std::uint64_t l = 2;
    unsigned split = 0;
    bool scan = false;
    std::uint64_t limit = 1'000'000;
    std::string format = "plain";
};

struct BenchRow {
    std::string algorithm;
    std::uint64_t x;
    double ms;
    std::string value;
    bool skipped = false;
    std::string note;
};

std::vector<std::uint64_t> parse_grid(const std::string& grid) {
    std::vector<std::uint64_t> xs;
    std::stringstream ss(grid);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        BigNat v = parse_threshold(item);
        xs.push_back(threshold_to_u64(v, "bench grid"));
    }
    if (xs.empty()) throw std::domain_error("bench: empty grid");
    return xs;
}

int run_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
    std::vector<BenchRow> rows;

    if (o.scan) {
        auto t0 = std::chrono::steady_clock::now();
        ErrorScanResult serial = error_scan_f2_serial(o.limit);
        double serial_ms = elapsed_ms(t0);
        t0 = std::chrono::steady_clock::now();
        ErrorScanResult parallel = error_scan_f2(o.limit);
        double parallel_ms = elapsed_ms(t0);
        if (serial.argmax_x != parallel.argmax_x ||
            serial.max_abs_error != parallel.max_abs_error ||
            serial.f2_at_argmax != parallel.f2_at_argmax)
            throw std::logic_error("bench: scan kernels disagree");
        rows.push_back({"scan-serial", o.limit, serial_ms,
                        std::to_string(serial.argmax_x), false, ""});
        rows.push_back({"scan-parallel", o.limit, parallel_ms,
                        std::to_string(parallel.argmax_x), false, ""});
    } else {
        unsigned j = o.split ? o.split : std::max(1u, o.k / 2);
        for (std::uint64_t x : parse_grid(o.grid)) {
            std::vector<std::pair<std::string, std::function<SummatoryValue()>>> algos;
            algos.emplace_back("naive", [&] { return F_naive(x, o.k, o.l); });
            algos.emplace_back("separation", [&] {
                return F_separation(x, o.k, o.l, SeparationVariant::kSingleLevel);
            });
            algos.emplace_back("elimination", [&] {
                return F_separation(x, o.k, o.l, SeparationVariant::kFullElimination);
            });
            if (o.k >= 2)
                algos.emplace_back("hyperbola", [&] { return F_hyperbola(x, o.k, o.l, j); });
            if (o.k >= 2 && o.k % 2 == 0)
                algos.emplace_back("doubling", [&] { return F_doubling(x, o.k, o.l); });
            if (o.k == 2)
                algos.emplace_back("f2", [&] { return F2_closed(x, o.l); });

            std::optional<SummatoryValue> reference;
            for (auto& [name, fn] : algos) {
                try {
                    auto t0 = std::chrono::steady_clock::now();
                    SummatoryValue v = fn();
                    double ms = elapsed_ms(t0);
                    if (reference && *reference != v)
                        throw std::logic_error("bench: algorithm disagreement at x = " +
                                               std::to_string(x) + " (" + name + ")");
                    if (!reference) reference = v;
                    rows.push_back({name, x, ms, v.get_str(), false, ""});
                } catch (const std::length_error& e) {
                    rows.push_back({name, x, 0, "", true, e.what()});
                }
            }
        }
    }

    if (o.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            json j;
            j["algorithm"] = r.algorithm;
            j["x"] = r.x;
            j["ms"] = r.ms;
            j["value"] = r.value;
            if (r.skipped) j["skipped"] = r.note;
            arr.push_back(j);
        }
        out << arr.dump(2) << "\n";
    } else if (o.format == "csv") {
        out << "algorithm,x,ms,value\n";
        for (const auto& r : rows)
            if (!r.skipped)
                out << r.algorithm << "," << r.x << "," << r.ms << "," << r.value << "\n";
    } else {
        for (const auto& r : rows) {
            if (r.skipped) {
                err << "skipped " << r.algorithm << " at x = " << r.x << ": " << r.note << "\n";
                continue;
            }
            out << std::left << std::setw(12) << r.algorithm << " x = " << std::setw(12) << r.x
                << std::fixed << std::setprecision(3) << std::setw(12) << r.ms << " ms   value "
                << r.value << "\n";
            out.unsetf(std::ios_base::floatfield);
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

struct SelftestOptions {
    std::uint64_t n_max = 600;
    unsigned k_max = 5;
    std::uint64_t x_max = 800;
};

int run_selftest(const SelftestOptions& o, std::ostream& out) {
    bool ok = true;
    auto report = [&](const std::string& name, bool pass) {
        out << (pass ? "[PASS] " : "[FAIL] ") << name << "\n";
        if (!pass) ok = false;
    };

    // counts: every algorithm against the enumeration oracle
    {
        bool pass = true;
        for (std::uint64_t l = 1; l <= 3 && pass; ++l) {
            auto rows = f_rows(o.n_max, o.k_max, l);
            for (std::uint64_t n = 1; n <= o.n_max && pass; ++n) {
                auto pf = factorize(n);
                for (unsigned k = 0; k <= o.k_max && pass; ++k) {
                    CountValue expect = oracle_count(n, k, l);
                    if (f_recursive(n, k, l) != expect ||
                        f_separation(n, k, l, SeparationVariant::kSingleLevel) != expect ||
                        f_separation(n, k, l, SeparationVariant::kFullElimination) != expect ||
                        BigNat(rows[k][n]) != expect)
                        pass = false;
                    if (l == 2 && f_macmahon(pf, k) != expect) pass = false;
                    if (l == 1 && d_k(pf, k) != expect) pass = false;
                }
            }
        }
        report("counts: oracle equivalence grid", pass);
    }

    // transforms: round trip d <-> f
    {
        bool pass = true;
        for (std::uint64_t n = 1; n <= o.n_max && pass; ++n)
            for (unsigned k = 0; k <= 8 && pass; ++k) {
                if (binomial_transform_d_from_f(n, k) != d_k(n, k)) pass = false;
                if (inverse_transform_f_from_d(n, k) != f_recursive(n, k, 2)) pass = false;
            }
        report("counts: binomial transform round trip", pass);
    }

    // summatory: all algorithms against the prefix of the convolution table
    {
        bool pass = true;
        for (std::uint64_t l = 1; l <= 3 && pass; ++l) {
            auto rows = f_rows(o.x_max, std::min(o.k_max, 4u), l);
            for (unsigned k = 0; k <= std::min(o.k_max, 4u) && pass; ++k) {
                BigNat prefix = 0;
                for (std::uint64_t x = 1; x <= o.x_max && pass; ++x) {
                    prefix += rows[k][x];
                    if (F_naive(x, k, l) != prefix) pass = false;
                    if (F_separation(x, k, l, SeparationVariant::kSingleLevel) != prefix)
                        pass = false;
                    if (F_separation(x, k, l, SeparationVariant::kFullElimination) != prefix)
                        pass = false;
                    if (k >= 2 && F_hyperbola(x, k, l, std::max(1u, k / 2)) != prefix)
                        pass = false;
                    if (k >= 2 && k % 2 == 0 && F_doubling(x, k, l) != prefix) pass = false;
                    if (k == 2 && F2_closed(x, l) != prefix) pass = false;
                }
            }
        }
        report("summatory: algorithm equivalence grid", pass);
    }

    // polyfit: route agreement and ground truth
    {
        bool pass = true;
        for (std::uint64_t l : {2ULL, 3ULL}) {
            for (const char* xs : {"100000", "1000000", "59049"}) {
                BigNat x(xs);
                long t = floor_log(x, l);
                for (unsigned j = 0; j <= 2 && pass; ++j) {
                    if (static_cast<long>(j) > t - 1) continue;
                    PolynomialReport rep = poly_report(x, l, j);
                    BigNat direct =
                        F_separation(x.get_ui(), static_cast<unsigned>(t - j), l);
                    if (rep.value != direct) pass = false;
                }
            }
        }
        report("polyfit: two routes vs direct summation", pass);
    }

    out << (ok ? "selftest passed\n" : "selftest FAILED\n");
    return ok ? 0 : 1;
}

} // namespace

BigNat parse_threshold(const std::string& text) {
    std::string s = text;
    if (s.empty()) throw std::domain_error("empty numeric argument");
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string frac = s.substr(dot + 1);
        if (frac.find_first_not_of("0123456789") != std::string::npos)
            throw std::domain_error("bad numeric argument: " + text);
        s = s.substr(0, dot); // floor semantics
        if (s.empty()) throw std::domain_error("bad numeric argument: " + text);
    }
    if (auto caret = s.find('^'); caret != std::string::npos) {
        std::string base_s = s.substr(0, caret);
        std::string exp_s = s.substr(caret + 1);
        if (base_s.empty() || exp_s.empty() ||
            base_s.find_first_not_of("0123456789") != std::string::npos ||
            exp_s.find_first_not_of("0123456789") != std::string::npos)
            throw std::domain_error("bad power argument: " + text);
        unsigned long exp = std::stoul(exp_s);
        if (exp > 1'000'000) throw std::domain_error("exponent too large: " + text);
        BigNat base(base_s);
        BigNat r;
        mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
        return r;
    }
    if (s.find_first_not_of("0123456789") != std::string::npos)
        throw std::domain_error("bad numeric argument: " + text);
    return BigNat(s);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact ordered-factorization counts f_k(n,l), their summatory functions, "
                 "polynomial representations and error scans"};
    app.require_subcommand(1);

    CountOptions count_opts;
    auto* count = app.add_subcommand("count", "f_k(n, l) for a single n");
    count->add_option("--n", count_opts.n, "integer to factor")->required();
    count->add_option("--k", count_opts.k, "number of factors")->required();
    count->add_option("--l", count_opts.l, "minimal factor (default 2)");
    count->add_option("--algorithm", count_opts.algorithm,
                      "auto|oracle|recursive|macmahon|separation|elimination|dk|transform|kalmar");
    count->add_option("--format", count_opts.format, "plain|json");

    SummatoryOptions sum_opts;
    auto* summatory = app.add_subcommand("summatory", "F_k(x, l) = sum_{n<=x} f_k(n, l)");
    summatory->add_option("--x", sum_opts.x_text, "threshold (decimal or a^b)")->required();
    summatory->add_option("--k", sum_opts.k, "number of factors")->required();
    summatory->add_option("--l", sum_opts.l, "minimal factor (default 2)");
    summatory->add_option("--algorithm", sum_opts.algorithm,
                          "auto|naive|separation|elimination|hyperbola|doubling|f2|f2-literal");
    summatory->add_option("--split", sum_opts.split, "hyperbola split index j");
    summatory->add_option("--format", sum_opts.format, "plain|json");

    PolyOptions poly_opts;
    auto* poly = app.add_subcommand("poly", "polynomial representation of F_{t-j}(x, l)");
    poly->add_option("--x", poly_opts.x_text, "threshold (decimal or a^b)")->required();
    poly->add_option("--l", poly_opts.l, "base (default 2, must be >= 2)");
    poly->add_option("--j", poly_opts.j, "offset from t = floor(log_l x)");
    poly->add_option("--format", poly_opts.format, "plain|json");

    BoundsOptions bounds_opts;
    auto* bounds = app.add_subcommand("bounds", "band bounds for F_{t-j}(n, l)");
    bounds->add_option("--j", bounds_opts.j, "offset from t")->required();
    bounds->add_option("--l", bounds_opts.l, "base (default 2)");
    bounds->add_option("--t-min", bounds_opts.t_min, "verify from this t");
    bounds->add_option("--t-max", bounds_opts.t_max, "verify up to this t (0 = skip)");
    bounds->add_option("--format", bounds_opts.format, "plain|json");

    std::uint64_t identity_limit = 10000;
    std::string identity_format = "plain";
    auto* identity = app.add_subcommand("identity", "verify mu/M/Lambda/Pi identities exactly");
    identity->add_option("--limit", identity_limit, "check all arguments up to this");
    identity->add_option("--format", identity_format, "plain|json");

    ScanOptions scan_opts;
    auto* scan = app.add_subcommand("scan", "max |F_2(x) - x(log x + 2 gamma - 3)| scan");
    scan->add_option("--limit", scan_opts.limit, "scan x <= limit (default 2*10^7)");
    scan->add_flag("--serial", scan_opts.serial, "force the serial reference kernel");
    scan->add_option("--csv", scan_opts.csv_path, "write sampled rows to this file");
    scan->add_option("--sample", scan_opts.sample, "sample step for csv rows");
    scan->add_option("--format", scan_opts.format, "plain|json");

    int constants_precision = 20;
    std::string constants_format = "plain";
    auto* constants = app.add_subcommand("constants", "Kalmar constants rho, K");
    constants->add_option("--precision", constants_precision, "decimal digits (<= 30)");
    constants->add_option("--format", constants_format, "plain|json");

    BenchOptions bench_opts;
    auto* bench = app.add_subcommand("bench", "time the summatory algorithms or scan kernels");
    bench->add_option("--grid", bench_opts.grid, "comma-separated x values");
    bench->add_option("--k", bench_opts.k, "number of factors (default 2)");
    bench->add_option("--l", bench_opts.l, "minimal factor (default 2)");
    bench->add_option("--split", bench_opts.split, "hyperbola split index");
    bench->add_flag("--scan", bench_opts.scan, "benchmark serial vs parallel scan kernels");
    bench->add_option("--limit", bench_opts.limit, "scan benchmark limit");
    bench->add_option("--format", bench_opts.format, "plain|json|csv");

    SelftestOptions selftest_opts;
    auto* selftest = app.add_subcommand("selftest", "cross-module oracle suites");
    selftest->add_option("--n-max", selftest_opts.n_max, "counts grid bound");
    selftest->add_option("--k-max", selftest_opts.k_max, "k bound");
    selftest->add_option("--x-max", selftest_opts.x_max, "summatory grid bound");

    std::vector<const char*> argv;
    argv.push_back("fk");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (app.got_subcommand(count)) return run_count(count_opts, out);
        if (app.got_subcommand(summatory)) return run_summatory(sum_opts, out);
        if (app.got_subcommand(poly)) return run_poly(poly_opts, out);
        if (app.got_subcommand(bounds)) return run_bounds(bounds_opts, out);
        if (app.got_subcommand(identity)) return run_identity(identity_limit, identity_format, out);
        if (app.got_subcommand(scan)) return run_scan(scan_opts, out);
        if (app.got_subcommand(constants))
            return run_constants(constants_precision, constants_format, out);
        if (app.got_subcommand(bench)) return run_bench(bench_opts, out, err);
        if (app.got_subcommand(selftest)) return run_selftest(selftest_opts, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand\n";
    return 2;
}

} // namespace fk::cli
