// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.
//
//   acceptance [--only N] [--cli PATH --golden DIR [--update-goldens]]

#include "ballcover/covering.hpp"
#include "ballcover/derivatives.hpp"
#include "ballcover/errors.hpp"
#include "ballcover/orthogonality.hpp"
#include "ballcover/separation.hpp"
#include "ballcover/smoothapprox.hpp"
#include "ballcover/witness.hpp"

#include "../support/generators.hpp"
#include "cli_golden.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

using namespace ballcover;
namespace bt = ballcover::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string vec_str(const Vector& v) {
    std::ostringstream os;
    os.precision(17);
    os << "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ")";
    return os.str();
}

struct Pair {
    std::string family;
    Space space;
    Vector x;
    Vector y;
    DerivativePair rho;
};

// Shared corpus for criteria 1-3: 500 pairs per (family, dim).
const std::vector<Pair>& corpus() {
    static const std::vector<Pair> pairs = [] {
        std::vector<Pair> out;
        bt::Rng rng(20240601);
        Space poly = Space::lp(2, 2.0);
        for (const auto& fam : bt::standard_families()) {
            for (int n = 2; n <= 6; ++n) {
                for (int k = 0; k < 500; ++k) {
                    // A fresh random polyhedral space every 50 pairs.
                    if (fam.p < 0.0 && k % 50 == 0) poly = bt::random_polyhedral(rng, n);
                    const Space s = fam.p < 0.0 ? poly : bt::make_space(fam, n, rng);
                    const Vector x = bt::random_point(s, rng);
                    const Vector y = bt::random_partner(s, x, rng);
                    out.push_back({fam.name, s, x, y, rho_analytic(s, x, y)});
                }
            }
        }
        return out;
    }();
    return pairs;
}

constexpr double kFilter = 1e-6;

Outcome side_equivalence(bool positive) {
    const auto t0 = Clock::now();
    Outcome o;
    std::size_t kept = 0, agree = 0, with_ball = 0;
    std::string first_bad;
    for (const auto& p : corpus()) {
        const double rho = positive ? p.rho.rho_minus : p.rho.rho_plus;
        if (std::abs(rho) <= kFilter) continue;
        ++kept;
        bool found = false;
        bool thrown = false;
        try {
            const auto w = positive ? positive_witness(p.space, p.x, p.y) : negative_witness(p.space, p.x, p.y);
            found = w.found();
            if (found && !witness_is_valid(p.space, p.x, p.y, *w.witness)) thrown = true;
        } catch (const std::exception&) {
            thrown = true;
        }
        const bool analytic = positive ? rho > 0.0 : rho < 0.0;
        const bool oracle =
            witness_bruteforce_oracle(p.space, p.x, p.y, positive ? Side::positive : Side::negative);
        if (!thrown && found == analytic && analytic == oracle) {
            ++agree;
            with_ball += found ? 1 : 0;
        } else if (first_bad.empty()) {
            first_bad = p.family + " x=" + vec_str(p.x) + " y=" + vec_str(p.y) + " rho=" + std::to_string(rho) +
                        " witness=" + (thrown ? "error" : found ? "yes" : "no") + " oracle=" + (oracle ? "yes" : "no");
        }
    }
    const double secs = seconds_since(t0);
    o.pass = agree == kept && kept > 0 && secs < 120.0;
    std::ostringstream os;
    os << agree << "/" << kept << " filtered pairs agree (" << with_ball << " with a ball), " << secs << " s";
    if (!first_bad.empty()) os << "; first mismatch: " << first_bad;
    o.detail = os.str();
    return o;
}

Outcome criterion3() {
    const auto t0 = Clock::now();
    Outcome o;
    std::size_t kept = 0, agree = 0, orth = 0, both = 0;
    std::vector<double> oracle_only;  // deficits where only the oracle disagrees
    std::string first_bad;
    for (const auto& p : corpus()) {
        if (std::min(std::abs(p.rho.rho_minus), std::abs(p.rho.rho_plus)) <= kFilter) continue;
        ++kept;
        bool pos = false, neg = false, thrown = false;
        try {
            pos = positive_witness(p.space, p.x, p.y).found();
            neg = negative_witness(p.space, p.x, p.y).found();
        } catch (const std::exception&) {
            thrown = true;
        }
        if (pos && neg) ++both;
        const bool bj = bj_orthogonal(p.space, p.x, p.y);
        const bool oracle = bj_bruteforce_oracle(p.space, p.x, p.y);
        const bool absent = !pos && !neg;
        if (!thrown && !(pos && neg) && bj == absent && absent == oracle) {
            ++agree;
            orth += bj ? 1 : 0;
            continue;
        }
        if (!thrown && bj == absent && oracle != bj) {
            // Record how far below ||x|| the oracle's minimum actually got.
            const auto det = bj_bruteforce_oracle_detail(p.space, p.x, p.y);
            oracle_only.push_back(norm(p.space, p.x) - det.h_min);
        }
        if (first_bad.empty()) {
            first_bad = p.family + " x=" + vec_str(p.x) + " y=" + vec_str(p.y) + " bj=" + (bj ? "1" : "0") +
                        " absent=" + (absent ? "1" : "0") + " oracle=" + (oracle ? "1" : "0");
        }
    }
    o.pass = agree == kept && both == 0 && kept > 0;
    std::ostringstream os;
    os << agree << "/" << kept << " filtered pairs agree (" << orth << " orthogonal), both-sides " << both << ", "
       << seconds_since(t0) << " s";
    if (!oracle_only.empty()) {
        os << "; " << oracle_only.size() << " mismatch(es) where only the golden-section oracle disagrees, min deficits";
        for (double d : oracle_only) os << " " << d;
        os << " (below its fixed 1e-9 threshold)";
    }
    if (!first_bad.empty()) os << "; first mismatch: " << first_bad;
    o.detail = os.str();
    return o;
}

Outcome criterion4() {
    const auto t0 = Clock::now();
    bt::Rng rng(4242);
    std::map<std::string, std::size_t> fails;
    std::string first_bad;
    double fd_max_err = 0.0;
    std::size_t instances = 0, fd_checked = 0, monotone_breaks = 0;
    auto fail = [&](const std::string& what, const Pair& p) {
        if (fails[what]++ == 0 && first_bad.empty()) {
            first_bad = what + " " + p.family + " x=" + vec_str(p.x) + " y=" + vec_str(p.y);
        }
    };
    for (const auto& fam : bt::standard_families()) {
        Space poly = bt::random_polyhedral(rng, 3);
        for (int k = 0; k < 10000; ++k) {
            const int n = bt::uniform_int(rng, 2, 6);
            if (fam.p < 0.0 && (k % 100 == 0 || poly.dim() != n)) poly = bt::random_polyhedral(rng, n);
            const Space s = fam.p < 0.0 ? poly : bt::make_space(fam, n, rng);
            const Vector x = bt::random_point(s, rng);
            const Vector y = bt::random_partner(s, x, rng);
            const Pair p{fam.name, s, x, y, rho_analytic(s, x, y)};
            ++instances;
            const double nx = norm(s, x), ny = norm(s, y);
            const double alpha = bt::uniform(rng, -3.0, 3.0);
            const double scale = std::max(1.0, (1.0 + std::abs(alpha)) * nx * (nx + ny));
            auto close = [&](double a, double b) { return std::abs(a - b) <= 1e-9 * scale; };

            // (i) homogeneity in each argument
            const auto ax = rho_analytic(s, alpha * x, y);
            const auto ay = rho_analytic(s, x, alpha * y);
            const double want_plus = alpha >= 0 ? alpha * p.rho.rho_plus : alpha * p.rho.rho_minus;
            const double want_minus = alpha >= 0 ? alpha * p.rho.rho_minus : alpha * p.rho.rho_plus;
            if (!close(ax.rho_plus, want_plus) || !close(ax.rho_minus, want_minus)) fail("(i) in x", p);
            if (!close(ay.rho_plus, want_plus) || !close(ay.rho_minus, want_minus)) fail("(i) in y", p);
            // (ii) ordering, and smoothness iff the derivatives agree on a basis
            if (p.rho.rho_minus > p.rho.rho_plus) fail("(ii) ordering", p);
            const auto sm = is_smooth(s, x);
            const auto js = duality_set(s, x);
            if (sm.smooth != (js.extreme_points.size() == 1) || sm.smooth != (sm.margin <= 1e-9 * nx)) {
                fail("(ii) smoothness", p);
            }
            // (iii) translation along x
            const auto tr = rho_analytic(s, x, alpha * x + y);
            if (!close(tr.rho_plus, alpha * nx * nx + p.rho.rho_plus) ||
                !close(tr.rho_minus, alpha * nx * nx + p.rho.rho_minus)) {
                fail("(iii) translation", p);
            }
            // (iv)/(v) support representation
            if (!close(p.rho.rho_plus, nx * js.support_max(y)) || !close(p.rho.rho_minus, nx * js.support_min(y))) {
                fail("(iv)/(v) support", p);
            }
            // Finite differences on one instance in ten.
            if (k % 10 == 0) {
                ++fd_checked;
                const auto trace = rho_finite_difference_trace(s, x, y);
                const double err = std::max(std::abs(trace.estimate.rho_plus - p.rho.rho_plus),
                                            std::abs(trace.estimate.rho_minus - p.rho.rho_minus)) /
                                   std::max(1.0, nx * ny);
                fd_max_err = std::max(fd_max_err, err);
                if (err >= 1e-5) fail("fd accuracy", p);
                const double slack = 1e-12 * std::max(1.0, nx * ny);
                for (std::size_t i = 1; i < trace.forward.size(); ++i) {
                    if (trace.forward[i] > trace.forward[i - 1] + slack ||
                        trace.backward[i] < trace.backward[i - 1] - slack) {
                        ++monotone_breaks;
                        fail("fd monotonicity", p);
                        break;
                    }
                }
                if (trace.backward.back() > p.rho.rho_minus + 1e-12 * scale ||
                    trace.forward.back() < p.rho.rho_plus - 1e-12 * scale) {
                    fail("fd bracketing", p);
                }
            }
        }
    }
    Outcome o;
    o.pass = fails.empty();
    std::ostringstream os;
    os << instances << " instances (10000 per family), " << fd_checked << " finite-difference traces, max fd error relative to max(1, ||x|| ||y||) "
       << fd_max_err << ", " << seconds_since(t0) << " s";
    for (const auto& [what, count] : fails) os << "; " << what << " failed " << count << "x";
    if (!first_bad.empty()) os << "; first: " << first_bad;
    o.detail = os.str();
    return o;
}

std::vector<Vector> coordinate_functionals(int n) {
    std::vector<Vector> f;
    for (int i = 0; i < n; ++i) f.push_back(Vector::Unit(n, i));
    return f;
}

Outcome coverings(bool symmetric) {
    Outcome o;
    std::ostringstream os;
    std::vector<std::pair<std::string, Space>> spaces;
    for (int n = 2; n <= 4; ++n) {
        for (double p : {1.5, 2.0, 3.0}) spaces.emplace_back("l" + std::to_string(p).substr(0, 3), Space::lp(n, p));
        if (symmetric) spaces.emplace_back("linf", Space::linf(n));
    }
    for (const auto& [name, s] : spaces) {
        const int n = s.dim();
        const double delta = n == 4 ? 0.05 : 0.01;
        const auto t0 = Clock::now();
        std::string status;
        try {
            const Covering c = symmetric ? symmetric_cover_2n(s, coordinate_functionals(n), delta)
                                         : smooth_cover_n_plus_1(s, coordinate_functionals(n), delta);
            const std::size_t want = symmetric ? 2 * static_cast<std::size_t>(n) : static_cast<std::size_t>(n) + 1;
            const bool ok = c.certificate && c.certificate->valid() && c.balls.size() == want;
            const double secs = seconds_since(t0);
            std::ostringstream st;
            st << c.balls.size() << " balls, slack " << c.certificate->min_slack << ", " << secs << " s";
            status = st.str();
            if (!ok || (symmetric && secs >= 60.0)) o.pass = false;
        } catch (const std::exception& e) {
            o.pass = false;
            status = std::string("error: ") + e.what();
        }
        os << (os.tellp() > 0 ? "; " : "") << name << " n=" << n << " d=" << delta << ": " << status;
    }
    o.detail = os.str();
    return o;
}

// Random ball B(c, r) with r in (0, ||c||].
Ball random_ball(const Space& s, bt::Rng& rng) {
    const Vector c = bt::random_point(s, rng) * bt::uniform(rng, 0.3, 3.0);
    const double nc = norm(s, c);
    const double r = bt::uniform(rng, 0.0, 1.0) < 0.2 ? nc : bt::uniform(rng, 0.05, 1.0) * nc;
    return {c, r};
}

Outcome criterion6() {
    const auto t0 = Clock::now();
    bt::Rng rng(66);
    std::size_t trials = 0, ok = 0;
    std::string first_bad;
    for (const auto& fam : bt::standard_families()) {
        for (int n = 2; n <= 4; ++n) {
            for (bool symmetric : {true, false}) {
                for (int k = 0; k < 100; ++k) {
                    const Space s = bt::make_space(fam, n, rng);
                    std::vector<Ball> cand;
                    if (symmetric) {
                        const int pairs = bt::uniform_int(rng, 1, n - 1);
                        for (int i = 0; i < pairs; ++i) {
                            const Ball b = random_ball(s, rng);
                            cand.push_back(b);
                            cand.push_back({-b.center, b.radius});
                        }
                    } else {
                        const int m = bt::uniform_int(rng, 1, n);
                        for (int i = 0; i < m; ++i) cand.push_back(random_ball(s, rng));
                    }
                    ++trials;
                    try {
                        const UncoveredPoint z = adversary_uncovered(s, cand, symmetric);
                        bool outside = std::abs(norm(s, z.point) - 1.0) <= 1e-12;
                        for (const Ball& b : cand) outside = outside && norm(s, b.center - z.point) >= b.radius - 1e-12;
                        if (outside) {
                            ++ok;
                            continue;
                        }
                        if (first_bad.empty()) first_bad = fam.name + " point inside a ball";
                    } catch (const std::exception& e) {
                        if (first_bad.empty()) first_bad = fam.name + " n=" + std::to_string(n) + ": " + e.what();
                    }
                }
            }
        }
    }
    Outcome o;
    o.pass = ok == trials;
    std::ostringstream os;
    os << ok << "/" << trials << " candidates defeated (6 families x n=2..4 x 100 symmetric + 100 asymmetric), "
       << seconds_since(t0) << " s";
    if (!first_bad.empty()) os << "; first failure: " << first_bad;
    o.detail = os.str();
    return o;
}

SelectionInstance random_instance(bt::Rng& rng) {
    const int kind = bt::uniform_int(rng, 0, 2);
    const int n = bt::uniform_int(rng, 2, 4);
    const Space s = kind == 0 ? Space::lp(n, 1.0) : kind == 1 ? Space::linf(n) : bt::random_polyhedral(rng, n);
    SelectionInstance inst{s, {}, {}, {}};
    const int m = bt::uniform_int(rng, 1, 4);
    while (static_cast<int>(inst.directions.size()) < m) {
        Vector x = bt::random_point(s, rng);
        x /= norm(s, x);
        if (duality_set(s, x).extreme_points.size() <= 6) inst.directions.push_back(x);
    }
    const int count = bt::uniform_int(rng, 1, 20);
    for (int j = 0; j < count; ++j) inst.points.push_back(bt::random_point(s, rng));
    return inst;
}

bool well_separated(const SelectionInstance& inst) {
    for (const auto& a : inst.points) {
        for (const auto& x : inst.directions) {
            if (std::abs(rho_analytic(inst.space, x, a).rho_minus) <= kFilter) return false;
        }
    }
    return true;
}

Outcome criterion8() {
    const auto t0 = Clock::now();
    bt::Rng rng(88);
    std::size_t agree = 0, equiv = 0, separated = 0, drawn = 0;
    std::string first_bad;
    int accepted = 0;
    while (accepted < 200) {
        const SelectionInstance inst = random_instance(rng);
        ++drawn;
        if (!well_separated(inst)) continue;
        ++accepted;
        try {
            const bool fast = positively_separates(inst).separated;
            const bool slow = selection_oracle_exhaustive(inst);
            const auto rep = separation_ballcover_equivalence(inst);
            separated += fast ? 1 : 0;
            if (fast == slow) ++agree;
            else if (first_bad.empty()) first_bad = "verdict mismatch on " + inst.space.label();
            if (rep.agree && rep.verdict.separated == fast) ++equiv;
            else if (first_bad.empty()) first_bad = "equivalence disagreement on " + inst.space.label();
        } catch (const std::exception& e) {
            if (first_bad.empty()) first_bad = e.what();
        }
    }
    Outcome o;
    o.pass = agree == 200 && equiv == 200;
    std::ostringstream os;
    os << agree << "/200 oracle agreement, " << equiv << "/200 bidirectional agreement (" << separated
       << " separated, " << 200 - separated << " not; " << drawn << " drawn before filtering), " << seconds_since(t0)
       << " s";
    if (!first_bad.empty()) os << "; first failure: " << first_bad;
    o.detail = os.str();
    return o;
}

Outcome criterion9() {
    const Space l2 = Space::lp(2, 2.0);
    auto v2 = [](double a, double b) { return (Vector(2) << a, b).finished(); };
    std::vector<Vector> approach, tilt, shrink;
    for (int k = 1; k <= 50; ++k) {
        approach.push_back(v2(1, 1.0 / k));
        tilt.push_back(v2(1.0 / k, 1));
        shrink.push_back(v2(1.0 / k, 0));
    }
    const auto good = closure_precondition_check({l2, {v2(1, 0)}, approach, {}}, {v2(1, 0)});
    const auto perp = closure_precondition_check({l2, {v2(1, 0)}, tilt, {}}, {v2(0, 1)});
    const auto zero = closure_precondition_check({l2, {v2(1, 0)}, shrink, {}}, {v2(0, 0)});
    const bool s1 = good.hypotheses_hold() && good.conclusion_holds && good.closure_covering_certified;
    const bool s2 = perp.distance_positive && !perp.disjoint && !perp.conclusion_holds &&
                    perp.orthogonal_hits.size() == 1 && perp.orthogonal_hits[0].rho_minus == 0.0;
    const bool s3 = !zero.distance_positive && zero.disjoint && !zero.conclusion_holds;
    Outcome o;
    o.pass = s1 && s2 && s3;
    o.detail = std::string("positive case ") + (s1 ? "validated" : "NOT validated") + "; closure meets x^perp " +
               (s2 ? "flagged, rho_minus = 0 at (0,1)" : "NOT flagged") + "; d(0, closure) = 0 " +
               (s3 ? "flagged" : "NOT flagged");
    return o;
}

Outcome criterion10() {
    const auto t0 = Clock::now();
    bt::Rng rng(1010);
    std::size_t ok = 0, total = 0, smooth_ok = 0, smooth_total = 0;
    long worst_n0 = 0;
    std::string first_bad;
    for (int d = 2; d <= 10; ++d) {
        const Space s = Space::linf(d);
        const Vector ones = Vector::Ones(d);
        double prev = std::numeric_limits<double>::infinity();
        for (long n = 1; n <= 1000; ++n) {
            const Vector u = linf_shrink_sequence(d, n);
            const Vector g = SmoothingSequence::linf_shrink().element(s, ones, n);
            const double dist = norm(s, u - ones);
            ++smooth_total;
            if (is_smooth(s, u).smooth && u == g && std::abs(dist - 1.0 / static_cast<double>(n)) <= 1e-15 &&
                dist <= prev && u[0] == 1.0) {
                ++smooth_ok;
            }
            prev = dist;
        }
        for (int k = 0; k < 100; ++k) {
            Vector y(d);
            for (int i = 0; i < d; ++i) y[i] = bt::uniform(rng, 0.1, 2.0);
            y *= bt::uniform(rng, 0.5, 3.0);
            if (rho_analytic(s, ones, y).rho_minus <= 0.1) {
                --k;
                continue;
            }
            ++total;
            try {
                const auto r = transfer_witness(s, ones, y, SmoothingSequence::linf_shrink(), 1000);
                if (r.found() && witness_is_valid(s, r.x_n0, y, *r.witness)) {
                    ++ok;
                    worst_n0 = std::max(worst_n0, *r.n0);
                } else if (first_bad.empty()) {
                    first_bad = "no transfer for y=" + vec_str(y);
                }
            } catch (const std::exception& e) {
                if (first_bad.empty()) first_bad = e.what();
            }
        }
    }
    Outcome o;
    o.pass = ok == total && smooth_ok == smooth_total;
    std::ostringstream os;
    os << ok << "/" << total << " transfers (100 per d = 2..10), max n0 = " << worst_n0 << "; " << smooth_ok << "/"
       << smooth_total << " sequence elements u_n smooth at distance 1/n, " << seconds_since(t0) << " s";
    if (!first_bad.empty()) os << "; first failure: " << first_bad;
    o.detail = os.str();
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    std::string cli, golden;
    bool update = false;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--only" && i + 1 < argc) only = std::stoi(argv[++i]);
        else if (a == "--cli" && i + 1 < argc) cli = argv[++i];
        else if (a == "--golden" && i + 1 < argc) golden = argv[++i];
        else if (a == "--update-goldens") update = true;
    }

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"witness on the positive ray iff rho_minus > 0", [] { return side_equivalence(true); }},
        {"witness on the negative ray iff rho_plus < 0", [] { return side_equivalence(false); }},
        {"exclusivity and orthogonality", criterion3},
        {"norm-derivative identities", criterion4},
        {"symmetric 2n coverings", [] { return coverings(true); }},
        {"adversary for undersized candidates", criterion6},
        {"smooth n+1 coverings", [] { return coverings(false); }},
        {"selection oracle equivalence", criterion8},
        {"closure hypotheses", criterion9},
        {"smooth-point witness transfer", criterion10},
        {"command-line goldens", [&] {
             if (cli.empty() || golden.empty()) return Outcome{false, "no --cli/--golden given"};
             const auto r = bt::run_cli_goldens(cli, golden, update);
             return Outcome{r.failures.empty(), r.summary()};
         }},
    };

    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (only != 0 && only != id) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("uncaught: ") + e.what()};
        }
        all = all && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[i].first << "): "
                  << o.detail << std::endl;
    }
    return all ? 0 : 1;
}
