#include "pmlforge/design_io.hpp"

#include <fstream>
#include <vector>

#include "json.hpp"

namespace pmlforge {
namespace {

using nlohmann::json;

json pair_of(Complex z) { return json::array({z.real(), z.imag()}); }

json pairs_of(const std::vector<Complex>& zs) {
    json out = json::array();
    for (Complex z : zs) out.push_back(pair_of(z));
    return out;
}

Complex pair_from(const json& j, const char* field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw DesignIOError(std::string(field) + ": expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Complex> pairs_from(const json& j, const char* field) {
    if (!j.is_array())
        throw DesignIOError(std::string(field) + ": expected an array");
    std::vector<Complex> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(pair_from(e, field));
    return out;
}

const json& member(const json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end())
        throw DesignIOError(std::string("missing field: ") + field);
    return *it;
}

double number_of(const json& j, const char* field) {
    const json& v = member(j, field);
    if (!v.is_number())
        throw DesignIOError(std::string(field) + ": expected a number");
    return v.get<double>();
}

int int_of(const json& j, const char* field) {
    const json& v = member(j, field);
    if (!v.is_number_integer())
        throw DesignIOError(std::string(field) + ": expected an integer");
    return v.get<int>();
}

bool bool_of(const json& j, const char* field) {
    const json& v = member(j, field);
    if (!v.is_boolean())
        throw DesignIOError(std::string(field) + ": expected a boolean");
    return v.get<bool>();
}

std::vector<double> reals_from(const json& j, const char* field) {
    const json& v = member(j, field);
    if (!v.is_array())
        throw DesignIOError(std::string(field) + ": expected an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number())
            throw DesignIOError(std::string(field) + ": expected numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DesignIOError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw DesignIOError(path + ": " + e.what());
    }
}

void write_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw DesignIOError("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out)
        throw DesignIOError("write failed: " + path);
}

}  // namespace

void save_design(const LayerDesign& d, const std::string& path) {
    json j;
    j["schema_version"] = 1;
    j["window"] = {{"lambda1", d.window.lambda1},
                   {"lambda2", d.window.lambda2},
                   {"lambda3", d.window.lambda3}};
    j["k_total"] = d.k_total;
    j["split_l"] = d.split_l;
    j["tail_power"] = d.tail_power;
    j["balanced"] = d.balanced;
    j["t_e"] = pairs_of(d.t_e.roots());
    j["t_p"] = pairs_of(d.t_p.roots());
    j["h2"] = pairs_of(d.h2.roots());
    j["fe_lengths"] = pairs_of(d.fe_segment.lengths);
    j["fd_hhat"] = pairs_of(d.fd_tail.hhat);
    j["fd_h"] = pairs_of(d.fd_tail.h);
    j["fd_terminal_unbounded"] = d.fd_tail.terminal_unbounded;
    j["achieved"] = {
        {"max_reflection_evanescent", d.achieved.max_reflection_evanescent},
        {"max_reflection_propagative", d.achieved.max_reflection_propagative},
        {"max_ntd_rel_error_evanescent", d.achieved.max_ntd_rel_error_evanescent},
        {"max_ntd_rel_error_propagative", d.achieved.max_ntd_rel_error_propagative},
    };
    write_file(j, path);
}

LayerDesign load_design(const std::string& path) {
    json j = parse_file(path);
    if (!j.is_object())
        throw DesignIOError(path + ": expected a JSON object");
    if (int_of(j, "schema_version") != 1)
        throw DesignIOError(path + ": unsupported schema_version");

    LayerDesign d;
    const json& w = member(j, "window");
    d.window.lambda1 = number_of(w, "lambda1");
    d.window.lambda2 = number_of(w, "lambda2");
    d.window.lambda3 = number_of(w, "lambda3");
    try {
        d.window.validate();
    } catch (const std::invalid_argument& e) {
        throw DesignIOError(path + ": " + e.what());
    }

    d.k_total = int_of(j, "k_total");
    d.split_l = int_of(j, "split_l");
    d.tail_power = int_of(j, "tail_power");
    d.balanced = bool_of(j, "balanced");
    if (d.k_total < 2 || d.split_l < 1 || d.split_l >= d.k_total)
        throw DesignIOError(path + ": inconsistent k_total / split_l");
    if (d.tail_power != 1 && d.tail_power != 2)
        throw DesignIOError(path + ": tail_power must be 1 or 2");

    auto te = pairs_from(member(j, "t_e"), "t_e");
    auto tp = pairs_from(member(j, "t_p"), "t_p");
    auto h2 = pairs_from(member(j, "h2"), "h2");
    if (static_cast<int>(te.size()) != d.split_l)
        throw DesignIOError(path + ": t_e root count does not match split_l");
    if (static_cast<int>(tp.size()) != d.k_total - d.split_l)
        throw DesignIOError(path + ": t_p root count does not match k_total - split_l");
    if (h2.size() != tp.size() * static_cast<std::size_t>(d.tail_power))
        throw DesignIOError(path + ": h2 root count does not match tail_power");
    d.t_e = Polynomial::from_roots(1.0, te);
    d.t_p = Polynomial::from_roots(1.0, tp);
    d.h2 = Polynomial::from_roots(1.0, h2);

    d.fe_segment.lengths = pairs_from(member(j, "fe_lengths"), "fe_lengths");
    if (d.fe_segment.lengths.size() != te.size())
        throw DesignIOError(path + ": fe_lengths count does not match split_l");

    d.fd_tail.hhat = pairs_from(member(j, "fd_hhat"), "fd_hhat");
    d.fd_tail.h = pairs_from(member(j, "fd_h"), "fd_h");
    d.fd_tail.terminal_unbounded = bool_of(j, "fd_terminal_unbounded");
    const std::size_t expect_h =
        d.fd_tail.hhat.size() - (d.fd_tail.terminal_unbounded ? 1 : 0);
    if (d.fd_tail.hhat.empty() || d.fd_tail.h.size() != expect_h)
        throw DesignIOError(path + ": fd step counts are inconsistent");

    const json& a = member(j, "achieved");
    d.achieved.max_reflection_evanescent = number_of(a, "max_reflection_evanescent");
    d.achieved.max_reflection_propagative = number_of(a, "max_reflection_propagative");
    d.achieved.max_ntd_rel_error_evanescent =
        number_of(a, "max_ntd_rel_error_evanescent");
    d.achieved.max_ntd_rel_error_propagative =
        number_of(a, "max_ntd_rel_error_propagative");
    return d;
}

void save_mesh(const FEMesh& mesh, const std::string& path) {
    json j;
    j["lengths"] = pairs_of(mesh.lengths);
    write_file(j, path);
}

FEMesh load_mesh(const std::string& path) {
    json j = parse_file(path);
    if (!j.is_object())
        throw DesignIOError(path + ": expected a JSON object");
    FEMesh mesh;
    mesh.lengths = pairs_from(member(j, "lengths"), "lengths");
    return mesh;
}

void save_grid(const FDGrid& grid, const std::string& path) {
    json j;
    j["hhat"] = pairs_of(grid.hhat);
    j["h"] = pairs_of(grid.h);
    j["terminal_unbounded"] = grid.terminal_unbounded;
    write_file(j, path);
}

FDGrid load_grid(const std::string& path) {
    json j = parse_file(path);
    if (!j.is_object())
        throw DesignIOError(path + ": expected a JSON object");
    FDGrid grid;
    grid.hhat = pairs_from(member(j, "hhat"), "hhat");
    grid.h = pairs_from(member(j, "h"), "h");
    grid.terminal_unbounded = bool_of(j, "terminal_unbounded");
    const std::size_t expect_h =
        grid.hhat.size() - (grid.terminal_unbounded && !grid.hhat.empty() ? 1 : 0);
    if (grid.h.size() != expect_h)
        throw DesignIOError(path + ": fd step counts are inconsistent");
    return grid;
}

void save_rational(const OddEvenRational& f, const std::string& path) {
    json j;
    j["p_tilde"] = pairs_of(f.p_tilde.coeffs());
    j["q_tilde"] = pairs_of(f.q_tilde.coeffs());
    write_file(j, path);
}

OddEvenRational load_rational(const std::string& path) {
    json j = parse_file(path);
    if (!j.is_object())
        throw DesignIOError(path + ": expected a JSON object");
    auto p = pairs_from(member(j, "p_tilde"), "p_tilde");
    auto q = pairs_from(member(j, "q_tilde"), "q_tilde");
    if (q.empty())
        throw DesignIOError(path + ": q_tilde must be nonempty");
    return {Polynomial(p), Polynomial(q)};
}

}  // namespace pmlforge
