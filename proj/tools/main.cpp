#include "io.hpp"
#include "svg.hpp"

#include "ballcover/covering.hpp"
#include "ballcover/derivatives.hpp"
#include "ballcover/errors.hpp"
#include "ballcover/orthogonality.hpp"
#include "ballcover/separation.hpp"
#include "ballcover/smoothapprox.hpp"
#include "ballcover/tolerances.hpp"
#include "ballcover/witness.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>

namespace bc = ballcover;
using bc::io::json;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { ok = 0, internal = 1, parse = 2, precondition = 3, inconsistency = 4, negative = 5 };

class Run {
public:
    explicit Run(std::string command) : command_(std::move(command)) {}

    // Inputs enter the digest in parsed form, so whitespace changes in a file
    // do not move it.
    void input(const std::string& role, const json& value) { inputs_[role] = value; }

    template <class F>
    auto timed(const std::string& phase, F&& f) {
        const auto t0 = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            record(phase, t0);
        } else {
            auto r = f();
            record(phase, t0);
            return r;
        }
    }

    json verdicts = json::object();
    std::vector<std::string> lines;

    json report() const {
        return {{"command", command_},
                {"inputs_digest", bc::io::sha256_hex(inputs_.dump())},
                {"verdicts", verdicts},
                {"timings_ms", timings_},
                {"version", kVersion}};
    }

    void print(bool as_json) const {
        if (as_json) {
            std::cout << report().dump(2) << '\n';
            return;
        }
        for (const auto& l : lines) std::cout << l << '\n';
    }

private:
    void record(const std::string& phase, std::chrono::steady_clock::time_point t0) {
        timings_[phase] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }

    std::string command_;
    json inputs_ = json::object();
    json timings_ = json::object();
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << (v == 0.0 ? 0.0 : v);
    return os.str();
}

std::string fmt(const bc::VectorRef& v) {
    std::ostringstream os;
    os << '(';
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << fmt(v[i]);
    os << ')';
    return os.str();
}

json pair_json(const bc::DerivativePair& d) {
    return {{"rho_minus", d.rho_minus},
            {"rho_plus", d.rho_plus},
            {"method", d.method == bc::DerivativeMethod::analytic ? "analytic" : "fd"},
            {"error_bound", d.error_bound}};
}

json witness_json(const bc::Witness& w) {
    return {{"lambda", w.lambda}, {"radius", w.radius}, {"margin", w.margin}};
}

struct Loaded {
    bc::Space space;
    json raw;
};

Loaded load_space(Run& run, const std::string& path) {
    json raw = bc::io::read_json_file(path);
    run.input("space", raw);
    bc::Space space = bc::io::space_from_json(raw);
    space.require_valid();
    return {std::move(space), std::move(raw)};
}

bc::Vector load_vector(Run& run, const std::string& role, const std::string& text) {
    bc::Vector v = bc::io::parse_vector(text);
    run.input(role, bc::io::vector_to_json(v));
    return v;
}

// Coordinate functionals scaled to unit dual norm.
std::vector<bc::Vector> default_functionals(const bc::Space& space) {
    std::vector<bc::Vector> out;
    for (int i = 0; i < space.dim(); ++i) {
        bc::Vector e = bc::Vector::Unit(space.dim(), i);
        out.push_back(e / bc::dual_norm(space, bc::Functional{e}));
    }
    return out;
}

std::vector<bc::Vector> load_functionals(Run& run, const std::string& path, const bc::Space& space) {
    if (path.empty()) return default_functionals(space);
    json raw = bc::io::read_json_file(path);
    run.input("functionals", raw);
    return bc::io::vectors_from_json(raw, "functionals");
}

json balls_json(const std::vector<bc::Ball>& balls) {
    json arr = json::array();
    for (const auto& b : balls) arr.push_back({{"center", bc::io::vector_to_json(b.center)}, {"radius", b.radius}});
    return arr;
}

void certificate_lines(Run& run, const bc::CoverageCertificate& c) {
    run.lines.push_back("min_slack: " + fmt(c.min_slack));
    run.lines.push_back("net_resolution: " + fmt(c.net_resolution));
    run.lines.push_back(std::string("full_cover: ") + (c.full_cover ? "true" : "false"));
    run.lines.push_back(std::string("balls_exclude_origin: ") + (c.balls_exclude_origin ? "true" : "false"));
}

bool is_symmetric_pairing(const std::vector<bc::Ball>& balls) {
    std::vector<bool> used(balls.size(), false);
    for (std::size_t i = 0; i < balls.size(); ++i) {
        if (used[i]) continue;
        const double scale = std::max(1.0, balls[i].center.cwiseAbs().maxCoeff());
        bool found = false;
        for (std::size_t j = i + 1; j < balls.size() && !found; ++j) {
            if (!used[j] && (balls[i].center + balls[j].center).cwiseAbs().maxCoeff() <= 1e-9 * scale &&
                std::abs(balls[i].radius - balls[j].radius) <= 1e-9 * scale) {
                used[i] = used[j] = true;
                found = true;
            }
        }
        if (!found) return false;
    }
    return !balls.empty();
}

struct Options {
    bool json = false;
    std::string space_file;
    std::string x, y;
    std::string method = "analytic";
    std::string side = "pos";
    std::string action;
    double delta = 0.0;
    std::string functionals_file, covering_file, points_file, out_file, svg_file;
    bool symmetric = false;
    std::string instance_file;
    std::string seq = "auto";
    long nmax = 10'000;
};

int cmd_derive(const Options& o, Run& run) {
    const auto sp = load_space(run, o.space_file);
    const bc::Vector x = load_vector(run, "x", o.x);
    const bc::Vector y = load_vector(run, "y", o.y);
    run.input("method", o.method);
    if (o.method == "analytic" || o.method == "both") {
        const auto d = run.timed("analytic", [&] { return bc::rho_analytic(sp.space, x, y); });
        run.verdicts["analytic"] = pair_json(d);
        run.lines.push_back("analytic rho_minus: " + fmt(d.rho_minus) + "  rho_plus: " + fmt(d.rho_plus));
    }
    if (o.method == "fd" || o.method == "both") {
        const auto d = run.timed("fd", [&] { return bc::rho_finite_difference(sp.space, x, y); });
        run.verdicts["fd"] = pair_json(d);
        run.lines.push_back("fd rho_minus: " + fmt(d.rho_minus) + "  rho_plus: " + fmt(d.rho_plus) +
                            "  error_bound: " + fmt(d.error_bound));
    }
    if (o.method == "both") {
        const json& a = run.verdicts["analytic"];
        const json& f = run.verdicts["fd"];
        const double delta = std::max(std::abs(a["rho_minus"].get<double>() - f["rho_minus"].get<double>()),
                                      std::abs(a["rho_plus"].get<double>() - f["rho_plus"].get<double>()));
        run.verdicts["agreement_delta"] = delta;
        run.lines.push_back("agreement_delta: " + fmt(delta));
    }
    return ok;
}

int cmd_witness(const Options& o, Run& run, const bc::Tolerances& tol) {
    const auto sp = load_space(run, o.space_file);
    const bc::Vector x = load_vector(run, "x", o.x);
    const bc::Vector y = load_vector(run, "y", o.y);
    run.input("side", o.side);
    run.verdicts["side"] = o.side;
    if (o.side == "classify") {
        const auto c = run.timed("classify", [&] { return bc::classify_pair(sp.space, x, y, tol); });
        run.verdicts["tag"] = std::string(bc::to_string(c.tag));
        run.verdicts["rho_minus"] = c.rho.rho_minus;
        run.verdicts["rho_plus"] = c.rho.rho_plus;
        run.lines.push_back("class: " + std::string(bc::to_string(c.tag)));
        return ok;
    }
    const bool pos = o.side == "pos";
    const auto r = run.timed("search", [&] {
        return pos ? bc::positive_witness(sp.space, x, y, tol) : bc::negative_witness(sp.space, x, y, tol);
    });
    run.verdicts[pos ? "rho_minus" : "rho_plus"] = r.rho;
    run.verdicts["found"] = r.found();
    if (r.witness) {
        run.verdicts["witness"] = witness_json(*r.witness);
        run.lines.push_back("witness lambda: " + fmt(r.witness->lambda) + "  radius: " + fmt(r.witness->radius) +
                            "  margin: " + fmt(r.witness->margin));
    } else {
        run.verdicts["limit_estimate"] = r.absence_profile ? r.absence_profile->limit_estimate : 0.0;
        run.lines.push_back(std::string("certified absence: ") + (pos ? "rho_minus = " : "rho_plus = ") + fmt(r.rho));
    }
    return ok;
}

int cmd_cover(const Options& o, Run& run, const bc::Tolerances& tol) {
    const auto sp = load_space(run, o.space_file);
    const bc::Space& space = sp.space;
    run.input("action", o.action);
    if (o.delta > 0.0) run.input("delta", o.delta);
    run.verdicts["action"] = o.action;

    bc::svg::Figure fig;
    fig.space = &space;
    int code = ok;

    auto sphere_target = [&](double delta) {
        return run.timed("net", [&] { return bc::TargetSet::sphere(bc::unit_sphere_net(space, delta)); });
    };
    auto finite_target = [&](const std::string& path) {
        json raw = bc::io::read_json_file(path);
        run.input("points", raw);
        return bc::TargetSet::finite(bc::io::vectors_from_json(raw, "points"));
    };
    auto require_delta = [&] {
        if (!(o.delta > 0.0)) throw bc::PreconditionError(o.action + " needs --delta > 0");
    };
    auto emit_covering = [&](const bc::Covering& c, const bc::TargetSet& target) {
        run.verdicts["balls"] = balls_json(c.balls);
        run.lines.push_back("balls: " + std::to_string(c.balls.size()));
        for (const auto& b : c.balls) run.lines.push_back("  B(" + fmt(b.center) + ", " + fmt(b.radius) + ")");
        if (c.certificate) {
            run.verdicts["certificate"] = bc::io::certificate_to_json(*c.certificate);
            certificate_lines(run, *c.certificate);
            if (!c.certificate->valid()) code = negative;
        }
        if (!o.out_file.empty()) bc::io::write_text_file(o.out_file, bc::io::covering_to_json(c, target).dump(2) + "\n");
        fig.balls = c.balls;
        if (target.kind == bc::TargetSet::Kind::unit_sphere || target.size() < 5000) fig.net = target.points;
    };

    if (o.action == "build-2n" || o.action == "build-n1") {
        require_delta();
        const auto fs = load_functionals(run, o.functionals_file, space);
        const bc::TargetSet target = sphere_target(o.delta);
        const bc::Covering c = run.timed("build", [&] {
            return o.action == "build-2n" ? bc::symmetric_cover_2n(space, fs, o.delta, tol)
                                          : bc::smooth_cover_n_plus_1(space, fs, target, tol);
        });
        emit_covering(c, target);
    } else if (o.action == "from-functionals") {
        if (o.functionals_file.empty()) throw bc::PreconditionError("from-functionals needs --functionals-file");
        const auto fs = load_functionals(run, o.functionals_file, space);
        if (o.points_file.empty()) require_delta();
        const bc::TargetSet target = o.points_file.empty() ? sphere_target(o.delta) : finite_target(o.points_file);
        const bc::Covering c = run.timed("build", [&] { return bc::cover_from_functionals(space, target, fs, tol); });
        emit_covering(c, target);
    } else if (o.action == "verify") {
        if (o.covering_file.empty()) throw bc::PreconditionError("verify needs --covering-file");
        json raw = bc::io::read_json_file(o.covering_file);
        run.input("covering", raw);
        const auto file = bc::io::covering_from_json(raw);
        bc::TargetSet target;
        if (!o.points_file.empty()) {
            target = finite_target(o.points_file);
        } else if (o.delta > 0.0) {
            target = sphere_target(o.delta);
        } else if (file.target) {
            target = run.timed("net", [&] { return bc::io::target_from_json(space, *file.target); });
        } else {
            throw bc::PreconditionError("verify needs a target: --delta, --points-file or a target in the covering file");
        }
        bc::Covering c{file.balls, run.timed("verify", [&] { return bc::verify_cover(space, file.balls, target, tol); })};
        emit_covering(c, target);
        if (file.certificate) {
            const bool same = *file.certificate == run.verdicts["certificate"];
            run.verdicts["certificate_matches_file"] = same;
            run.lines.push_back(std::string("certificate matches file: ") + (same ? "true" : "false"));
        }
        if (!c.certificate->valid()) {
            const auto w = c.certificate->worst_point;
            if (w >= 0) {
                const bc::Vector p = target.points.col(w);
                run.verdicts["worst_point_coords"] = bc::io::vector_to_json(p);
                run.lines.push_back("worst point: " + fmt(p));
                fig.uncovered = p;
            }
        }
    } else if (o.action == "adversary") {
        if (o.covering_file.empty()) throw bc::PreconditionError("adversary needs --covering-file");
        json raw = bc::io::read_json_file(o.covering_file);
        run.input("covering", raw);
        const auto file = bc::io::covering_from_json(raw);
        const bool symmetric =
            o.symmetric || (static_cast<int>(file.balls.size()) > space.dim() && is_symmetric_pairing(file.balls)) ||
            (static_cast<int>(file.balls.size()) <= space.dim() && file.balls.size() > 1 &&
             is_symmetric_pairing(file.balls));
        run.input("symmetric", symmetric);
        const auto u = run.timed("adversary", [&] { return bc::adversary_uncovered(space, file.balls, symmetric, tol); });
        run.verdicts["symmetric"] = symmetric;
        run.verdicts["point"] = bc::io::vector_to_json(u.point);
        run.verdicts["per_ball_slack"] = u.per_ball_slack;
        run.lines.push_back("uncovered point: " + fmt(u.point));
        for (std::size_t i = 0; i < u.per_ball_slack.size(); ++i) {
            run.lines.push_back("  ball " + std::to_string(i) + " slack: " + fmt(u.per_ball_slack[i]));
        }
        fig.balls = file.balls;
        fig.uncovered = u.point;
    } else {
        throw bc::ParseError("unknown cover action '" + o.action + "'");
    }

    if (!o.svg_file.empty()) bc::io::write_text_file(o.svg_file, bc::svg::render(fig));
    return code;
}

int cmd_separate(const Options& o, Run& run, const bc::Tolerances& tol) {
    json raw = bc::io::read_json_file(o.instance_file);
    run.input("instance", raw);
    const bc::SelectionInstance inst = bc::io::instance_from_json(raw);
    const auto rep = run.timed("equivalence", [&] { return bc::separation_ballcover_equivalence(inst, tol); });
    json idx = json::array();
    for (const auto& w : rep.verdict.witness_index) idx.push_back(w ? json(*w) : json(nullptr));
    run.verdicts["separated"] = rep.verdict.separated;
    run.verdicts["witness_index"] = idx;
    run.verdicts["covering_certified"] = rep.covering_certified;
    run.verdicts["necessity_verified"] = rep.necessity_verified;
    run.verdicts["absence_verified"] = rep.absence_verified;
    run.verdicts["agree"] = rep.agree;
    run.lines.push_back(std::string("separated: ") + (rep.verdict.separated ? "true" : "false"));
    std::string idx_line = "witness_index:";
    for (const auto& w : rep.verdict.witness_index) idx_line += w ? " " + std::to_string(*w) : std::string(" -");
    run.lines.push_back(idx_line);
    if (rep.covering) {
        run.verdicts["balls"] = balls_json(rep.covering->balls);
        run.lines.push_back("covering balls: " + std::to_string(rep.covering->balls.size()) +
                            (rep.covering_certified ? " (certified)" : " (not certified)"));
    }
    if (rep.verdict.failure) {
        json sel = json::array();
        for (const auto& f : rep.verdict.failure->selection) sel.push_back(bc::io::vector_to_json(f));
        run.verdicts["failure"] = {{"point_index", rep.verdict.failure->point_index}, {"selection", sel}};
        run.lines.push_back("failing point: " + std::to_string(rep.verdict.failure->point_index));
    }
    run.lines.push_back(std::string("agree: ") + (rep.agree ? "true" : "false"));

    int code = !rep.agree ? inconsistency : rep.verdict.separated ? ok : negative;
    if (!inst.closure_points.empty()) {
        const auto cr = run.timed("closure", [&] { return bc::closure_precondition_check(inst, inst.closure_points, tol); });
        json hits = json::array();
        for (const auto& h : cr.orthogonal_hits) {
            hits.push_back({{"closure_index", h.closure_index},
                            {"direction_index", h.direction_index},
                            {"rho_minus", h.rho_minus},
                            {"rho_plus", h.rho_plus}});
        }
        run.verdicts["closure"] = {{"distance_positive", cr.distance_positive},
                                   {"zero_point", cr.zero_point ? json(*cr.zero_point) : json(nullptr)},
                                   {"disjoint", cr.disjoint},
                                   {"orthogonal_hits", hits},
                                   {"conclusion_holds", cr.conclusion_holds},
                                   {"closure_covering_certified", cr.closure_covering_certified},
                                   {"hypotheses_hold", cr.hypotheses_hold()},
                                   {"findings", cr.findings}};
        run.lines.push_back(std::string("closure hypotheses hold: ") + (cr.hypotheses_hold() ? "true" : "false"));
        for (const auto& f : cr.findings) run.lines.push_back("  " + f);
        if (code == ok && !(cr.hypotheses_hold() && cr.conclusion_holds)) code = negative;
    }
    return code;
}

int cmd_smooth(const Options& o, Run& run, const bc::Tolerances& tol) {
    const auto sp = load_space(run, o.space_file);
    const bc::Vector x = load_vector(run, "x", o.x);
    const bc::Vector y = load_vector(run, "y", o.y);
    std::string seq = o.seq;
    if (seq == "auto") seq = sp.space.family() == bc::Family::linf ? "linf" : "blend";
    run.input("seq", seq);
    run.input("nmax", o.nmax);
    const auto rule = seq == "linf" ? bc::SmoothingSequence::linf_shrink() : bc::SmoothingSequence::radial_lp_blend();
    const auto r = run.timed("transfer", [&] { return bc::transfer_witness(sp.space, x, y, rule, o.nmax, tol); });
    run.verdicts["seq"] = seq;
    run.verdicts["scanned"] = r.scanned;
    run.verdicts["found"] = r.found();
    if (!r.found()) {
        run.lines.push_back("no smooth witness up to n = " + std::to_string(r.scanned));
        return negative;
    }
    run.verdicts["n0"] = *r.n0;
    run.verdicts["x_n0"] = bc::io::vector_to_json(r.x_n0);
    run.verdicts["rho_minus"] = r.rho;
    if (r.witness) run.verdicts["witness"] = witness_json(*r.witness);
    run.lines.push_back("n0: " + std::to_string(*r.n0));
    run.lines.push_back("x_n0: " + fmt(r.x_n0));
    run.lines.push_back("rho_minus(x_n0, y): " + fmt(r.rho));
    if (r.witness) {
        run.lines.push_back("witness lambda: " + fmt(r.witness->lambda) + "  radius: " + fmt(r.witness->radius) +
                            "  margin: " + fmt(r.witness->margin));
    }
    return ok;
}

int fail(const Options& o, Run& run, int code, const char* kind, const std::string& msg) {
    std::cerr << "error: " << msg << '\n';
    if (o.json) {
        run.verdicts = {{"error", kind}, {"message", msg}};
        run.print(true);
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Norm derivatives, ball coverings and separation in finite-dimensional normed spaces"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.add_flag("--json", o.json, "Emit the structured report as JSON");

    auto add_pair = [&](CLI::App* sub) {
        sub->add_option("space", o.space_file, "Space file")->required();
        sub->add_option("--x", o.x, "Vector x, e.g. 3,4")->required();
        sub->add_option("--y", o.y, "Vector y")->required();
    };

    auto* derive = app.add_subcommand("derive", "One-sided norm derivatives");
    add_pair(derive);
    derive->add_option("--method", o.method)->check(CLI::IsMember({"analytic", "fd", "both"}));

    auto* witness = app.add_subcommand("witness", "Ball witness on one side of the ray through x");
    add_pair(witness);
    witness->add_option("--side", o.side)->check(CLI::IsMember({"pos", "neg", "classify"}));

    auto* cover = app.add_subcommand("cover", "Build, verify or attack ball coverings");
    cover->add_option("space", o.space_file, "Space file")->required();
    cover->add_option("action", o.action, "build-2n | build-n1 | from-functionals | verify | adversary")
        ->required()
        ->check(CLI::IsMember({"build-2n", "build-n1", "from-functionals", "verify", "adversary"}));
    cover->add_option("--delta", o.delta, "Sphere net resolution");
    cover->add_option("--functionals-file", o.functionals_file);
    cover->add_option("--covering-file", o.covering_file);
    cover->add_option("--points-file", o.points_file, "Finite target points");
    cover->add_option("--out", o.out_file, "Write the covering file here");
    cover->add_option("--svg", o.svg_file, "Write a figure (dimension 2)");
    cover->add_flag("--symmetric", o.symmetric, "Treat the adversary candidate as symmetric pairs");

    auto* separate = app.add_subcommand("separate", "Selection separation and the ball-covering equivalence");
    separate->add_option("instance", o.instance_file, "Instance file")->required();

    auto* smooth = app.add_subcommand("smooth", "Transfer a witness to smooth points converging to x");
    add_pair(smooth);
    smooth->add_option("--seq", o.seq)->check(CLI::IsMember({"auto", "linf", "blend"}));
    smooth->add_option("--nmax", o.nmax)->check(CLI::PositiveNumber);

    app.fallthrough();
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return parse;
    }

    const CLI::App* sub = app.get_subcommands().front();
    Run run(sub->get_name());
    try {
        const bc::Tolerances tol = bc::tolerances_from_environment();
        int code = ok;
        if (sub == derive) code = cmd_derive(o, run);
        else if (sub == witness) code = cmd_witness(o, run, tol);
        else if (sub == cover) code = cmd_cover(o, run, tol);
        else if (sub == separate) code = cmd_separate(o, run, tol);
        else code = cmd_smooth(o, run, tol);
        run.print(o.json);
        return code;
    } catch (const bc::ParseError& e) {
        return fail(o, run, parse, "parse", e.what());
    } catch (const bc::PreconditionError& e) {
        return fail(o, run, precondition, "precondition", e.what());
    } catch (const bc::InconsistencyError& e) {
        return fail(o, run, inconsistency, "inconsistency", e.what());
    } catch (const bc::CertificateError& e) {
        return fail(o, run, negative, "certificate", e.what());
    } catch (const std::exception& e) {
        return fail(o, run, internal, "internal", e.what());
    }
}
