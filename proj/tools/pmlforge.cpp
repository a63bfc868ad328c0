// pmlforge: design, convert, sweep, and validate discrete absorbing layers.
//
// Exit codes: 0 success (validate: all groups pass), 1 validate found a
// failing group, 2 invalid flags or window, 3 solver failure, 4 unreadable
// or invalid input file, 5 conversion breakdown.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pmlforge/balance.hpp"
#include "pmlforge/composite.hpp"
#include "pmlforge/design_io.hpp"
#include "pmlforge/validation.hpp"

namespace {

using namespace pmlforge;

constexpr int kExitBadFlags = 2;
constexpr int kExitSolver = 3;
constexpr int kExitBadInput = 4;
constexpr int kExitConversion = 5;

void fail(const std::string& msg) { std::fprintf(stderr, "error: %s\n", msg.c_str()); }

struct DesignArgs {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda3 = 0.0;
    int k_total = 0;
    int split_l = -1;  // < 0: run the balance search
    int tail_power = 2;
    std::string out;
};

struct SweepArgs {
    std::string design;
    std::string out;
    int samples = 2001;
};

struct ConvertArgs {
    std::string from;
    std::string to;
    std::string in;
    std::string out;
};

struct ValidateArgs {
    std::string design;
};

void print_achieved(const LayerDesign& d) {
    std::printf("max_reflection_evanescent    %.6e\n", d.achieved.max_reflection_evanescent);
    std::printf("max_reflection_propagative   %.6e\n", d.achieved.max_reflection_propagative);
    std::printf("max_ntd_rel_error_evanescent  %.6e\n",
                d.achieved.max_ntd_rel_error_evanescent);
    std::printf("max_ntd_rel_error_propagative %.6e\n",
                d.achieved.max_ntd_rel_error_propagative);
}

int run_design(const DesignArgs& a) {
    const SpectralWindow window{a.lambda1, a.lambda2, a.lambda3};
    try {
        window.validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
        return kExitBadFlags;
    }
    try {
        LayerDesign d;
        if (a.split_l < 0) {
            auto [design, report] = design_balanced(window, a.k_total, a.tail_power);
            d = std::move(design);
            std::printf("chosen split_l %d of k_total %d (tail_power %d, balanced %s)\n",
                        report.chosen_l, a.k_total, a.tail_power, d.balanced ? "yes" : "no");
        } else {
            d = build_composite(window, a.k_total, a.split_l, a.tail_power);
            std::printf("fixed split_l %d of k_total %d (tail_power %d, balanced %s)\n",
                        a.split_l, a.k_total, a.tail_power, d.balanced ? "yes" : "no");
        }
        print_achieved(d);
        save_design(d, a.out);
        std::printf("wrote %s\n", a.out.c_str());
        return 0;
    } catch (const std::invalid_argument& e) {
        fail(e.what());
        return kExitBadFlags;
    } catch (const ConvergenceError& e) {
        fail(std::string("solver failure (minimax stage): ") + e.what());
        return kExitSolver;
    } catch (const BreakdownError& e) {
        fail("solver failure (grid extraction, stage " + std::to_string(e.stage) +
             "): " + e.what());
        return kExitSolver;
    } catch (const DesignIOError& e) {
        fail(e.what());
        return kExitBadInput;
    }
}

void append_field(std::string& line, double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    line.append(buf, static_cast<std::size_t>(p - buf));
}

int run_sweep(const SweepArgs& a) {
    LayerDesign d;
    try {
        d = load_design(a.design);
    } catch (const DesignIOError& e) {
        fail(e.what());
        return kExitBadInput;
    }
    const Polynomial h = total_h(d);
    const SweepResult sweep = halfspace_error_sweep(h, d.window, a.samples);

    std::ofstream out(a.out, std::ios::binary);
    if (!out) {
        fail("cannot write " + a.out);
        return kExitBadInput;
    }
    out << "lambda_re,lambda_im,s_re,s_im,refl_abs,ntd_rel_err,flag_pole\n";
    std::string line;
    for (const auto& row : sweep.samples) {
        line.clear();
        const Complex s = sqrt_lambda(row.lambda);
        append_field(line, row.lambda.real());
        line.push_back(',');
        append_field(line, row.lambda.imag());
        line.push_back(',');
        append_field(line, s.real());
        line.push_back(',');
        append_field(line, s.imag());
        line.push_back(',');
        append_field(line, row.reflection_modulus);
        line.push_back(',');
        append_field(line, row.rel_error);
        line.push_back(',');
        line.push_back(row.flag_pole ? '1' : '0');
        line.push_back('\n');
        out << line;
    }
    if (!out) {
        fail("write failed: " + a.out);
        return kExitBadInput;
    }
    std::printf("propagative: max refl_abs %.9e  max ntd_rel_err %.9e\n",
                sweep.propagative.max_reflection, sweep.propagative.max_rel_error);
    std::printf("evanescent:  max refl_abs %.9e  max ntd_rel_err %.9e\n",
                sweep.evanescent.max_reflection, sweep.evanescent.max_rel_error);
    return 0;
}

// The three representations the converter moves between. Everything is
// normalized through the odd/even rational, whose q~-monic form is the
// natural common coordinate.
struct Representation {
    enum class Kind { Fe, Fd, Rational } kind;
    FEMesh mesh;
    FDGrid grid;
    OddEvenRational rational;
};

Representation load_rep(const std::string& kind, const std::string& path) {
    Representation rep;
    if (kind == "fe") {
        rep.kind = Representation::Kind::Fe;
        rep.mesh = load_mesh(path);
    } else if (kind == "fd") {
        rep.kind = Representation::Kind::Fd;
        rep.grid = load_grid(path);
    } else {
        rep.kind = Representation::Kind::Rational;
        rep.rational = load_rational(path);
    }
    return rep;
}

FEMesh to_mesh(const Representation& rep) {
    switch (rep.kind) {
        case Representation::Kind::Fe: return rep.mesh;
        case Representation::Kind::Fd: return fd_to_fe(rep.grid);
        default: return mesh_from_polynomial(combine_odd_even(rep.rational));
    }
}

FDGrid to_grid(const Representation& rep) {
    switch (rep.kind) {
        case Representation::Kind::Fe: return fe_to_fd(rep.mesh);
        case Representation::Kind::Fd: return rep.grid;
        default: return rational_to_grid(rep.rational);
    }
}

OddEvenRational to_rational(const Representation& rep) {
    switch (rep.kind) {
        case Representation::Kind::Fe: return split_odd_even(mesh_polynomial(rep.mesh));
        case Representation::Kind::Fd: return grid_to_rational(rep.grid);
        default: return rep.rational;
    }
}

double mesh_residual(FEMesh a, FEMesh b) {
    if (a.lengths.size() != b.lengths.size())
        return std::numeric_limits<double>::infinity();
    auto lex = [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    };
    std::sort(a.lengths.begin(), a.lengths.end(), lex);
    std::sort(b.lengths.begin(), b.lengths.end(), lex);
    double worst = 0.0;
    for (std::size_t j = 0; j < a.lengths.size(); ++j)
        worst = std::max(worst, std::abs(a.lengths[j] - b.lengths[j]) /
                                    std::max(1.0, std::abs(a.lengths[j])));
    return worst;
}

double grid_residual(const FDGrid& a, const FDGrid& b) {
    if (a.hhat.size() != b.hhat.size() || a.h.size() != b.h.size() ||
        a.terminal_unbounded != b.terminal_unbounded)
        return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t j = 0; j < a.hhat.size(); ++j)
        worst = std::max(worst, std::abs(a.hhat[j] - b.hhat[j]) /
                                    std::max(1.0, std::abs(a.hhat[j])));
    for (std::size_t j = 0; j < a.h.size(); ++j)
        worst = std::max(worst, std::abs(a.h[j] - b.h[j]) / std::max(1.0, std::abs(a.h[j])));
    return worst;
}

// Compare after scaling both pairs to monic q~; the pair is only defined
// up to a common factor.
double rational_residual(const OddEvenRational& a, const OddEvenRational& b) {
    const OddEvenRational na{a.p_tilde.scaled(1.0 / a.q_tilde.lead()),
                             a.q_tilde.scaled(1.0 / a.q_tilde.lead())};
    const OddEvenRational nb{b.p_tilde.scaled(1.0 / b.q_tilde.lead()),
                             b.q_tilde.scaled(1.0 / b.q_tilde.lead())};
    double worst = 0.0;
    const int np = std::max(na.p_tilde.degree(), nb.p_tilde.degree());
    for (int j = 0; j <= np; ++j)
        worst = std::max(worst, std::abs(na.p_tilde.coeff(j) - nb.p_tilde.coeff(j)));
    const int nq = std::max(na.q_tilde.degree(), nb.q_tilde.degree());
    for (int j = 0; j <= nq; ++j)
        worst = std::max(worst, std::abs(na.q_tilde.coeff(j) - nb.q_tilde.coeff(j)));
    return worst;
}

int run_convert(const ConvertArgs& a) {
    if (a.from == a.to) {
        std::ifstream in(a.in, std::ios::binary);
        if (!in) {
            fail("cannot open " + a.in);
            return kExitBadInput;
        }
        std::ostringstream bytes;
        bytes << in.rdbuf();
        std::ofstream out(a.out, std::ios::binary);
        out << bytes.str();
        if (!out) {
            fail("cannot write " + a.out);
            return kExitBadInput;
        }
        std::printf("identity conversion, roundtrip residual 0\n");
        return 0;
    }

    Representation src;
    try {
        src = load_rep(a.from, a.in);
    } catch (const DesignIOError& e) {
        fail(e.what());
        return kExitBadInput;
    }

    try {
        Representation dst;
        double residual = 0.0;
        if (a.to == "fe") {
            const FEMesh mesh = to_mesh(src);
            save_mesh(mesh, a.out);
            dst.kind = Representation::Kind::Fe;
            dst.mesh = mesh;
        } else if (a.to == "fd") {
            const FDGrid grid = to_grid(src);
            save_grid(grid, a.out);
            dst.kind = Representation::Kind::Fd;
            dst.grid = grid;
        } else {
            const OddEvenRational f = to_rational(src);
            save_rational(f, a.out);
            dst.kind = Representation::Kind::Rational;
            dst.rational = f;
        }
        switch (src.kind) {
            case Representation::Kind::Fe:
                residual = mesh_residual(src.mesh, to_mesh(dst));
                break;
            case Representation::Kind::Fd:
                residual = grid_residual(src.grid, to_grid(dst));
                break;
            default:
                residual = rational_residual(src.rational, to_rational(dst));
                break;
        }
        std::printf("roundtrip residual %.3e\n", residual);
        return 0;
    } catch (const BreakdownError& e) {
        fail("conversion breakdown at stage " + std::to_string(e.stage) + ": " + e.what());
        return kExitConversion;
    } catch (const std::invalid_argument& e) {
        fail(e.what());
        return kExitConversion;
    } catch (const DesignIOError& e) {
        fail(e.what());
        return kExitBadInput;
    }
}

int run_validate(const ValidateArgs& a) {
    LayerDesign d;
    try {
        d = load_design(a.design);
    } catch (const DesignIOError& e) {
        fail(e.what());
        return kExitBadInput;
    }
    const ValidationReport report = run_validation(d);
    for (const auto& g : report.groups)
        std::printf("%-18s %s   %s\n", g.name.c_str(), g.pass ? "PASS" : "FAIL",
                    g.detail.c_str());
    if (report.all_pass()) {
        std::printf("all groups pass\n");
        return 0;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"design, convert, sweep, and validate discrete absorbing layers"};
    app.require_subcommand(1);

    DesignArgs da;
    CLI::App* design = app.add_subcommand(
        "design", "solve a window and write a design file");
    design->add_option("--lambda1", da.lambda1, "propagative upper edge, in (-1, 0)")
        ->required();
    design->add_option("--lambda2", da.lambda2, "evanescent lower edge, > 0")->required();
    design->add_option("--lambda3", da.lambda3, "evanescent upper edge, >= lambda2")
        ->required();
    design->add_option("--k", da.k_total, "total root count, 2..20")->required();
    design->add_option("--split-l", da.split_l,
                       "fix the segment/tail split instead of searching");
    design->add_option("--tail-power", da.tail_power, "tail multiplicity, 1 or 2");
    design->add_option("--out", da.out, "design file to write")->required();

    SweepArgs sa;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "sample the reflection and NtD error curves of a design");
    sweep->add_option("--design", sa.design, "design file")->required();
    sweep->add_option("--out", sa.out, "CSV file to write")->required();
    sweep->add_option("--samples", sa.samples, "samples per spectral interval")
        ->check(CLI::PositiveNumber);

    ConvertArgs ca;
    CLI::App* convert = app.add_subcommand(
        "convert", "convert between fe / fd / rational representations");
    convert->add_option("--from", ca.from, "source representation")
        ->required()
        ->check(CLI::IsMember({"fe", "fd", "rational"}));
    convert->add_option("--to", ca.to, "target representation")
        ->required()
        ->check(CLI::IsMember({"fe", "fd", "rational"}));
    convert->add_option("--in", ca.in, "input file")->required();
    convert->add_option("--out", ca.out, "output file")->required();

    ValidateArgs va;
    CLI::App* validate = app.add_subcommand(
        "validate", "re-check all invariant groups of a design file");
    validate->add_option("--design", va.design, "design file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitBadFlags;
    }

    if (design->parsed()) return run_design(da);
    if (sweep->parsed()) return run_sweep(sa);
    if (convert->parsed()) return run_convert(ca);
    return run_validate(va);
}
