#pragma once
/**
 * @file report.hpp
 * @brief JSON reports for every command of the command-line tool.  Each
 *        report embeds its configuration, the closed-form prediction where
 *        one exists, the computed value and a pass flag.  Output depends only
 *        on the configuration (including the seed), never on the thread count.
 */

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "drinfeld/modp.hpp"
#include "drinfeld/parse.hpp"
#include "drinfeld/random.hpp"
#include "drinfeld/theta.hpp"

namespace drinfeld::report {

using Json = nlohmann::ordered_json;

/** @brief Everything a command may need; unused fields are ignored by a command. */
struct RunConfig {
    long p = 2;
    long q = 2;
    long k = 0;
    long i = 0;
    long radius = 1;
    std::uint64_t seed = 1;
    bool audit = false;
    std::string g = "1/z";
    std::string f = "1/(z-1)";
    long kmax = 6;
    long samples = 30;
    std::string vertex = "0,0";
    std::optional<std::string> check_vertex;
    bool identity_b = false;
    std::string mode = "all";
    std::string modp_command = "degrees";
    unsigned threads = 1;  ///< fan-out for sweeps; does not affect the output
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c = {"tree",   "lattice",    "local-dims", "harmonic", "residue",
                                               "theta",  "identity-b", "modp",       "sweep"};
    return c;
}

inline const std::vector<std::string>& modp_commands() {
    static const std::vector<std::string> c = {"degrees", "sections", "stable-lines", "symgeom-check", "b-forms"};
    return c;
}

// ---------------------------------------------------------------------------
// Serialisation helpers
// ---------------------------------------------------------------------------

inline Json to_json(const Valuation& v) { return v.str(); }
inline Json to_json(const std::vector<Valuation>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back(v.str());
    return a;
}
inline Json to_json(const DualVector& h) {
    Json a = Json::array();
    for (const auto& c : h.coords) a.push_back(c.str());
    return a;
}
inline Json to_json(const std::vector<FqElem>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

/** @brief F_q-rational function in the input syntax, coefficients written as field elements. */
inline std::string fq_expression(const FqRational& f) {
    auto poly = [](const FqPoly& P) {
        std::string s;
        for (int i = P.degree(); i >= 0; --i) {
            if (P[i].is_zero()) continue;
            if (!s.empty()) s += "+";
            bool unit = P[i] == one_like(P[i]);
            if (i == 0) s += P[i].str();
            else s += (unit ? std::string() : P[i].str() + "*") + (i == 1 ? "z" : "z^" + std::to_string(i));
        }
        return s.empty() ? std::string("0") : s;
    };
    if (f.denominator().degree() == 0) return poly(f.numerator());
    std::string n = poly(f.numerator());
    if (f.numerator().degree() > 0) n = "(" + n + ")";
    return n + "/(" + poly(f.denominator()) + ")";
}

inline Json config_json(const std::string& command, const RunConfig& c) {
    Json j;
    j["command"] = command;
    if (command == "modp") {
        j["subcommand"] = c.modp_command;
        j["q"] = c.q;
        j["k"] = c.k;
        j["i"] = c.i;
        j["radius"] = c.radius;
        return j;
    }
    j["p"] = c.p;
    if (command == "tree") {
        j["radius"] = c.radius;
        j["center"] = c.vertex;
    } else if (command == "lattice") {
        j["k"] = c.k;
        j["vertex"] = c.vertex;
    } else if (command == "local-dims") {
        j["k"] = c.k;
    } else if (command == "harmonic") {
        j["k"] = c.k;
        j["radius"] = c.radius;
        j["mode"] = c.mode;
    } else if (command == "residue") {
        j["g"] = c.g;
        j["k"] = c.k;
        j["radius"] = c.radius;
        j["audit"] = c.audit;
    } else if (command == "theta") {
        j["f"] = c.f;
        j["k"] = c.k;
        j["radius"] = c.radius;
        j["check_vertex"] = c.check_vertex ? Json(*c.check_vertex) : Json(nullptr);
        j["identity_b"] = c.identity_b;
        j["kmax"] = c.kmax;
    } else if (command == "identity-b") {
        j["kmax"] = c.kmax;
    } else if (command == "sweep") {
        j["seed"] = c.seed;
        j["samples"] = c.samples;
    }
    return j;
}

/** @brief Runs n independent jobs on up to `threads` threads; results stay in job order. */
inline std::vector<Json> fan_out(size_t n, unsigned threads, const std::function<Json(size_t)>& job) {
    std::vector<Json> out(n);
    unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (t <= 1) {
        for (size_t i = 0; i < n; ++i) out[i] = job(i);
        return out;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(t);
    for (unsigned w = 0; w < t; ++w)
        pool.emplace_back([&, w] {
            try {
                for (size_t i = w; i < n; i += t) out[i] = job(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

/** @brief Per-item seed, independent of scheduling. */
inline std::uint64_t item_seed(std::uint64_t seed, std::uint64_t suite, std::uint64_t index) {
    std::seed_seq s{seed, suite, index};
    std::uint64_t v[2];
    std::uint32_t w[4];
    s.generate(w, w + 4);
    v[0] = (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
    v[1] = (static_cast<std::uint64_t>(w[2]) << 32) | w[3];
    return v[0] ^ (v[1] * 0x9e3779b97f4a7c15ULL);
}

// ---------------------------------------------------------------------------
// tree
// ---------------------------------------------------------------------------

inline Json tree_report(const RunConfig& c) {
    if (!is_prime(c.p)) throw InvalidParameters("p must be prime");
    if (c.radius < 0 || c.radius > 8) throw InvalidParameters("radius must lie in [0, 8]");
    const long predicted = TruncatedTree::predicted_vertex_count(c.p, c.radius);
    if (predicted > 200000) throw InvalidParameters("truncation too large: " + std::to_string(predicted) + " vertices");
    TruncatedTree T(c.p, c.radius, parse_vertex(c.vertex, c.p));
    bool regular = true;
    for (size_t v = 0; v < T.vertices().size(); ++v) {
        size_t expected = T.is_interior(v) ? static_cast<size_t>(c.p + 1) : (c.radius == 0 ? 0u : 1u);
        regular = regular && T.incident_edges(v).size() == expected;
    }
    Json nb = Json::array();
    for (const auto& w : neighbors(T.center(), c.p)) nb.push_back(w.str());
    Json r;
    r["config"] = config_json("tree", c);
    r["center"] = T.center().str();
    r["center_neighbors"] = nb;
    r["predicted"] = {{"vertices", predicted}, {"edges", predicted - 1}};
    r["computed"] = {{"vertices", T.vertices().size()},
                     {"edges", T.edges().size()},
                     {"interior_vertices", T.interior_vertices().size()}};
    r["regular"] = regular;
    r["is_tree"] = T.is_tree();
    r["pass"] = regular && T.is_tree() && static_cast<long>(T.vertices().size()) == predicted;
    return r;
}

// ---------------------------------------------------------------------------
// lattice
// ---------------------------------------------------------------------------

/** @brief Diagonal valuations n(k - 2j)/2 of L at (n, 0) for n in {-1, 0, 1}. */
inline std::vector<Valuation> predicted_named_profile(long n, long k) {
    std::vector<Valuation> v;
    for (long j = 0; j <= k; ++j) v.push_back(Valuation::halves(n * (k - 2 * j)));
    return v;
}

/** @brief Sorted max(0, (2j - k)/2): the standard edge lattice relative to L at (0,0). */
inline std::vector<Valuation> predicted_standard_edge_profile(long k) {
    std::vector<Valuation> v;
    for (long j = 0; j <= k; ++j) v.push_back(max(Valuation::halves(2 * j - k), Valuation(0)));
    std::sort(v.begin(), v.end());
    return v;
}

inline Json lattice_report(const RunConfig& c) {
    if (!is_prime(c.p)) throw InvalidParameters("p must be prime");
    if (c.k < 0 || c.k > 40) throw InvalidParameters("k must lie in [0, 40]");
    const int k = static_cast<int>(c.k);
    bool pass = true;
    Json named = Json::array();
    for (long n : {-1L, 0L, 1L}) {
        auto prof = diagonal_profile(vertex_lattice({n, 0}, k, c.p));
        auto pred = predicted_named_profile(n, k);
        bool ok = prof && *prof == pred;
        pass = pass && ok;
        named.push_back({{"vertex", Vertex{n, 0}.str()},
                         {"predicted", to_json(pred)},
                         {"computed", prof ? to_json(*prof) : Json(nullptr)},
                         {"pass", ok}});
    }
    EdgeLattice Le = edge_lattice(standard_edge(), k, c.p);
    auto pe = predicted_standard_edge_profile(k);
    bool edge_ok = Le.profile == pe;
    pass = pass && edge_ok;

    Vertex v = parse_vertex(c.vertex, c.p);
    VertexLattice Lv = vertex_lattice(v, k, c.p);
    // A second transporter: representative times an element of K^x GL_2(O).
    GroupElement s = GroupElement{1, 1, 0, 1} * GroupElement{1, 0, Rational(c.p), 1} * GroupElement{Rational(c.p), 0, 0, Rational(c.p)};
    VertexLattice Lv2 = vertex_lattice(v, k, c.p, representative(v, c.p) * s);
    bool independent = true;
    for (const auto& e : relative_position(Lv, Lv2).exps) independent = independent && e == Valuation(0);
    pass = pass && independent;
    auto diag = diagonal_profile(Lv);
    EdgeLattice Lpe = edge_lattice(make_edge(v, parent(v, c.p), c.p), k, c.p);

    Json r;
    r["config"] = config_json("lattice", c);
    r["named_vertices"] = named;
    r["standard_edge"] = {{"edge", standard_edge().str()},
                          {"predicted", to_json(pe)},
                          {"computed", to_json(Le.profile)},
                          {"pass", edge_ok}};
    r["vertex"] = {{"vertex", v.str()},
                   {"relative_to_origin", to_json(relative_position(vertex_lattice({0, 0}, k, c.p), Lv).exps)},
                   {"diagonal_profile", diag ? to_json(*diag) : Json(nullptr)},
                   {"transporter_independent", independent},
                   {"edge_to_parent_profile", to_json(Lpe.profile)}};
    r["pass"] = pass;
    return r;
}

// ---------------------------------------------------------------------------
// local-dims
// ---------------------------------------------------------------------------

/** @brief D^Z_{Z,Z'} equals span(h_lo, ..., h_hi) in the basis of L_Z (assumed to be the h_j). */
inline bool d_space_is_span(const Vertex& Z, const Vertex& Zp, int k, long p, int lo, int hi) {
    const FqField& F = FqField::get(p);
    auto D = d_space(Z, Zp, k, p);
    std::vector<std::vector<FqElem>> all = D;
    for (int j = lo; j <= hi; ++j) {
        std::vector<FqElem> e(k + 1, F.zero());
        e[j] = F.one();
        all.push_back(e);
    }
    return D.size() == static_cast<size_t>(hi - lo + 1) && rank_of(D, k + 1, F.zero()) == D.size() &&
           rank_of(all, k + 1, F.zero()) == D.size();
}

inline Json local_dims_report(const RunConfig& c) {
    if (c.k < 0 || c.k > 40) throw InvalidParameters("k must lie in [0, 40]");
    const int k = static_cast<int>(c.k);
    LocalSpaces s = local_spaces(standard_edge(), k, c.p);
    bool lower = d_space_is_span({0, 0}, {-1, 0}, k, c.p, 0, k / 2);
    bool upper = d_space_is_span({0, 0}, {1, 0}, k, c.p, (k + 1) / 2, k);
    Json r;
    r["config"] = config_json("local-dims", c);
    r["dimD"] = s.dimD;
    r["dimE"] = s.dimE;
    r["dimZhar"] = s.dimZhar;
    r["predicted"] = {{"dimD", s.predictedD}, {"dimE", s.predictedE}, {"dimZhar", s.predictedZhar}};
    r["sum_map_surjective"] = s.sum_map_surjective;
    r["d_span_towards_minus_one"] = lower;
    r["d_span_towards_one"] = upper;
    r["pass"] = s.pass() && lower && upper;
    return r;
}

// ---------------------------------------------------------------------------
// harmonic
// ---------------------------------------------------------------------------

inline Json harmonic_report(const RunConfig& c) {
    if (c.k < 0 || c.k > 20) throw InvalidParameters("k must lie in [0, 20]");
    if (c.radius < 0 || c.radius > 4) throw InvalidParameters("radius must lie in [0, 4] for harmonic kernels");
    std::vector<HarmonicMode> modes;
    if (c.mode == "all") modes = {HarmonicMode::OverKHat, HarmonicMode::ModPihatFreeBoundary, HarmonicMode::ModPihatLatticeBoundary};
    else if (c.mode == "khat") modes = {HarmonicMode::OverKHat};
    else if (c.mode == "free") modes = {HarmonicMode::ModPihatFreeBoundary};
    else if (c.mode == "lattice") modes = {HarmonicMode::ModPihatLatticeBoundary};
    else throw InvalidParameters("mode must be one of all, khat, free, lattice");
    auto tree = std::make_shared<const TruncatedTree>(c.p, c.radius);
    Json arr = Json::array();
    bool pass = true;
    for (auto m : modes) {
        HarmonicKernel h = harmonic_kernel(tree, static_cast<int>(c.k), m);
        bool ok = h.pass();
        if (m == HarmonicMode::OverKHat)
            for (const auto& b : h.basis)
                for (const auto& d : delta(b)) ok = ok && d.is_zero();
        pass = pass && ok;
        arr.push_back({{"mode", to_string(m)},
                       {"dimension", h.dimension},
                       {"predicted", h.predicted},
                       {"edge_reduction_injective", h.beta_injective},
                       {"pass", ok}});
    }
    Json r;
    r["config"] = config_json("harmonic", c);
    r["vertices"] = tree->vertices().size();
    r["edges"] = tree->edges().size();
    r["interior_vertices"] = tree->interior_vertices().size();
    r["kernels"] = arr;
    r["pass"] = pass;
    return r;
}

// ---------------------------------------------------------------------------
// residue
// ---------------------------------------------------------------------------

inline Json residue_report(const RunConfig& c) {
    if (c.k < 0 || c.k > 20) throw InvalidParameters("k must lie in [0, 20]");
    if (c.radius < 0 || c.radius > 5) throw InvalidParameters("radius must lie in [0, 5] for residues");
    RationalFunction g = parse_function(c.g, c.p);
    auto tree = std::make_shared<const TruncatedTree>(c.p, c.radius);
    const int k = static_cast<int>(c.k);
    Cochain res = res0(g, k, tree, c.audit);
    ResidueIntegrality integ = res0_integrality(g, k, tree);
    bool harmonic = true;
    for (const auto& d : delta(res)) harmonic = harmonic && d.is_zero();
    Json edges = Json::array();
    for (size_t e = 0; e < tree->edges().size(); ++e)
        edges.push_back({{"edge", tree->edges()[e].str()},
                         {"value", to_json(res.values[e])},
                         {"in_lattice", integ.edges[e].in_lattice},
                         {"section_integral_at_ends", integ.edges[e].precondition}});
    Json r;
    r["config"] = config_json("residue", c);
    r["g"] = to_expression(g);
    r["edges"] = edges;
    r["harmonic"] = harmonic;
    r["integrality_where_integral"] = integ.pass();
    r["pass"] = harmonic && integ.pass();
    return r;
}

// ---------------------------------------------------------------------------
// theta and identity-b
// ---------------------------------------------------------------------------

inline Json identity_b_table(long kmax) {
    if (kmax < 0 || kmax > 20) throw InvalidParameters("kmax must lie in [0, 20]");
    Json rows = Json::array();
    for (long k = 2; k <= kmax; k += 2) {
        for (long m = -8; m <= 8; ++m) {
            bool all_a = true;
            IdentityBCheck first;
            for (long p : {2L, 3L}) {
                for (const KHat& a : {KHat(p), KHat(p, 1), KHat(p, Rational(1, p)), KHat(p, 1, 1)}) {
                    IdentityBCheck ch = identity_b_check(static_cast<int>(k), a, m);
                    if (p == 2 && a.is_zero()) first = ch;
                    all_a = all_a && ch.pass();
                }
            }
            rows.push_back({{"k", k},
                            {"m", m},
                            {"lhs", first.closed_lhs.get_str()},
                            {"rhs", first.closed_rhs.get_str()},
                            {"pass", all_a}});
        }
    }
    return rows;
}

inline bool all_pass(const Json& rows) {
    for (const auto& r : rows)
        if (!r["pass"].get<bool>()) return false;
    return true;
}

inline Json identity_b_report(const RunConfig& c) {
    Json rows = identity_b_table(c.kmax);
    bool fr = true;
    for (int n = 0; n <= 6; ++n)
        for (long m = -6; m <= 6; ++m) fr = fr && falling_rising_check(n, KHat(3, 2), m);
    Json r;
    r["config"] = config_json("identity-b", c);
    r["table"] = rows;
    r["factorisations"] = fr;
    r["pass"] = all_pass(rows) && fr;
    return r;
}

inline Json certificate_json(const MembershipCertificate& m) {
    return {{"member", m.member},
            {"transported_valuation", to_json(m.transported)},
            {"gauss_valuation", to_json(m.raw)},
            {"level_bound", to_json(m.raw_bound)}};
}

inline Json theta_report(const RunConfig& c) {
    if (c.k < 0 || c.k > 20) throw InvalidParameters("k must lie in [0, 20]");
    if (c.radius < 0 || c.radius > 5) throw InvalidParameters("radius must lie in [0, 5]");
    const int k = static_cast<int>(c.k);
    RationalFunction f = parse_function(c.f, c.p);
    RationalFunction th = theta(f, k);
    ThetaPolynomialKernel ker = theta_polynomial_kernel(k, k + 6);
    auto tree = std::make_shared<const TruncatedTree>(c.p, c.radius);
    bool kills = res_kills_theta(f, k, tree);
    bool pass = ker.dimension == static_cast<size_t>(k + 1) && ker.is_span_of_low_monomials && kills;
    Json r;
    r["config"] = config_json("theta", c);
    r["f"] = to_expression(f);
    r["theta"] = to_expression(th);
    r["polynomial_kernel"] = {{"predicted_dimension", k + 1},
                              {"dimension", ker.dimension},
                              {"span_of_low_monomials", ker.is_span_of_low_monomials}};
    r["residue_of_theta_vanishes"] = kills;
    if (c.check_vertex) {
        Vertex v = parse_vertex(*c.check_vertex, c.p);
        if (f.is_zero()) throw ZeroFunction("integrality certificate of the zero function");
        ThetaCertificate cert = theta_integrality(f, k, v);
        r["integrality"] = {{"vertex", v.str()},
                            {"input", certificate_json(cert.input)},
                            {"output", certificate_json(cert.output)},
                            {"pass", cert.pass()}};
        pass = pass && cert.pass();
    }
    if (c.identity_b) {
        Json rows = identity_b_table(c.kmax);
        r["identity_b"] = rows;
        pass = pass && all_pass(rows);
    }
    r["pass"] = pass;
    return r;
}

// ---------------------------------------------------------------------------
// modp
// ---------------------------------------------------------------------------

inline Json divisor_json(const P1Divisor& D, const FqField& F) {
    Json pts = Json::object();
    for (const auto& [code, m] : D.at_points) pts[F.elem(code).str()] = m;
    return {{"infinity", D.at_infinity}, {"points", pts}, {"degree", D.degree()}};
}

inline Json modp_report(const RunConfig& c) {
    if (!is_prime_power(c.q) || c.q > 256) throw InvalidParameters("q must be a prime power <= 256");
    const FqField& F = FqField::get(c.q);
    Json r;
    r["config"] = config_json("modp", c);
    const std::string& cmd = c.modp_command;
    if (cmd == "degrees") {
        ComponentDegree d = component_degree(c.q, c.k);
        Json basis = Json::array();
        for (const auto& b : riemann_roch_basis(component_divisor(c.k, F), F)) basis.push_back(fq_expression(b));
        r["divisor"] = divisor_json(component_divisor(c.k, F), F);
        r["predicted_degree"] = d.closed_form;
        r["degree"] = d.from_divisor;
        r["h0"] = d.h0;
        r["basis"] = basis;
        r["pass"] = d.pass();
    } else if (cmd == "sections") {
        if (c.k < 0) throw InvalidParameters("k must be non-negative");
        GlobalSections s = global_sections_truncated(c.q, c.k, c.radius);
        r["vertices"] = s.vertices;
        r["edges"] = s.edges;
        r["component_h0"] = s.local_h0;
        r["predicted"] = s.closed_form;
        r["assembled"] = s.assembled ? Json(*s.assembled) : Json(nullptr);
        r["node_evaluation_rank"] = s.node_evaluation_rank ? Json(*s.node_evaluation_rank) : Json(nullptr);
        r["pass"] = s.pass();
    } else if (cmd == "stable-lines") {
        QuotientAnalysis Q = quotient_rep_and_stable_lines(c.q, c.k, c.i);
        Json kept = Json::array(), lines = Json::array();
        for (long m : Q.kept_monomials) kept.push_back("X^" + std::to_string(m) + "*Y^" + std::to_string(Q.params.t - m));
        for (const auto& l : Q.stable_lines) lines.push_back(to_json(l));
        r["t"] = Q.params.t;
        r["twist"] = Q.params.s;
        r["relations"] = Q.relation_count;
        r["predicted_dimension"] = c.q + 1;
        r["quotient_dimension"] = Q.quotient_dim;
        r["quotient_basis"] = kept;
        r["relations_stable"] = Q.relations_stable;
        r["homomorphism"] = Q.homomorphism;
        r["stable_lines"] = lines;
        r["pass"] = Q.pass();
    } else if (cmd == "symgeom-check") {
        SymGeomCheck s = symgeom_check(c.q, c.k, c.i);
        Json images = Json::array();
        for (long m = 0; m <= s.params.t; ++m)
            images.push_back(fq_expression(symgeom_iso(
                sym_basis<FqElem>(static_cast<int>(s.params.t), static_cast<int>(m), s.params.s, F.zero()), s.params)));
        r["t"] = s.params.t;
        r["twist"] = s.params.s;
        r["target_divisor"] = divisor_json(symgeom_divisor(s.params, F), F);
        r["dimension"] = s.dimension;
        r["target_h0"] = s.target_h0;
        r["image_rank"] = s.image_rank;
        r["image_in_target"] = s.image_in_target;
        r["equivariant"] = s.equivariant;
        r["group_elements_checked"] = s.group_elements_checked;
        r["images"] = images;
        r["pass"] = s.pass();
    } else if (cmd == "b-forms") {
        BFormsCheck b = b_forms_check(c.q);
        r["sl2_invariant"] = b.sl2_invariant;
        r["gl2_scaled_by_inverse_determinant"] = b.gl2_det_inverse;
        r["in_component_space"] = b.in_component_space;
        r["involution_swaps_parity"] = b.involution_swaps_parity;
        r["involution_square_fixes"] = b.involution_square_fixes;
        r["pass"] = b.pass();
    } else {
        throw InvalidParameters("unknown modp subcommand '" + cmd + "'");
    }
    return r;
}

// ---------------------------------------------------------------------------
// sweep: randomised property suites
// ---------------------------------------------------------------------------

/** @brief Invertible p-integral matrix with unit determinant. */
inline GroupElement sample_gl2_o(Sampler& S) {
    for (;;) {
        GroupElement u{S.rational(0, 2), S.rational(0, 2), S.rational(0, 2), S.rational(0, 2)};
        if (sgn(u.det()) != 0 && val_p(u.det(), S.prime()) == 0) return u;
    }
}

/** @brief Scale f by a power of pihat so that its transported valuation at v is `target`. */
inline RationalFunction normalise_at(const RationalFunction& f, long k, const Vertex& v, long target_twice) {
    MembershipCertificate m = section_membership(f, k, v);
    return f.scaled(KHat::pihat_power(f.prime(), target_twice - m.transported.twice()));
}

inline Json equivariance_item(long p, std::uint64_t seed) {
    Sampler S(p, seed);
    long k = S.integer(-4, 6);
    GroupElement g = S.group_element();
    RationalFunction f = S.function().to_function();
    Vertex v = S.vertex(2);
    f = normalise_at(f, k, v, S.integer(-1, 1));
    MembershipCertificate a = section_membership(f, k, v);
    Vertex gv = act_on_vertex(g, v, p);
    MembershipCertificate b = section_membership(automorphic_act(g, f, k), k, gv);
    bool consistent = a.member == !(a.raw < a.raw_bound) && b.member == !(b.raw < b.raw_bound);
    return {{"k", k},
            {"vertex", v.str()},
            {"image", gv.str()},
            {"member", a.member},
            {"transported", to_json(a.transported)},
            {"transported_image", to_json(b.transported)},
            {"pass", a.member == b.member && a.transported == b.transported && consistent}};
}

inline Json valuation_identity_item(long p, std::uint64_t seed, int which) {
    Sampler S(p, seed);
    long k = S.integer(-6, 6);
    long n = 0;
    GroupElement g = identity_element();
    const char* kind = "";
    switch (which) {
        case 0:
            kind = "diagonal";
            n = S.integer(-3, 3);
            g = gamma_n(S.integer(-3, 3), p);
            break;
        case 1: {
            kind = "scalar";
            Rational a = S.rational(-2, 2, false);
            g = {a, 0, 0, a};
            break;
        }
        case 2:
            kind = "integral";
            g = sample_gl2_o(S);
            break;
        default: {
            kind = "composite";
            n = S.integer(-3, 3);
            long n2 = S.integer(-3, 3);
            Rational lambda = S.rational(-2, 2, false);
            g = gamma_n(n2, p) * sample_gl2_o(S).scaled(lambda) * gamma_n(n, p).inverse();
            break;
        }
    }
    ValuationIdentity vi = valuation_identity(g, n, k, p);
    return {{"case", kind}, {"k", k}, {"n", vi.n}, {"n_image", vi.n_image},
            {"lhs", to_json(vi.lhs)}, {"rhs", vi.rhs}, {"pass", vi.pass()}};
}

inline Json residue_item(long p, std::uint64_t seed) {
    Sampler S(p, seed);
    int k = static_cast<int>(S.integer(0, 3));
    RationalFunction g = S.function(3, true).to_function();
    auto tree = std::make_shared<const TruncatedTree>(p, 3);
    Cochain c = res0(g, k, tree, true);
    bool harmonic = true;
    for (const auto& d : delta(c)) harmonic = harmonic && d.is_zero();
    ResidueIntegrality integ = res0_integrality(g, k, tree);
    long pre = 0;
    for (const auto& e : integ.edges) pre += e.precondition;
    return {{"k", k},
            {"g", to_expression(g)},
            {"harmonic", harmonic},
            {"edges_with_integral_section", pre},
            {"integrality_where_integral", integ.pass()},
            {"pass", harmonic && integ.pass()}};
}

inline Json theta_item(long p, std::uint64_t seed) {
    Sampler S(p, seed);
    int k = static_cast<int>(S.integer(0, 4));
    Vertex v = S.vertex(2);
    RationalFunction f = (S.function() * FactoredRational(KHat(p, 1), {{KHat(p, S.special_root()), -1}})).to_function();
    f = normalise_at(f, -k, v, 0);
    ThetaCertificate cert = theta_integrality(f, k, v);
    return {{"k", k},
            {"vertex", v.str()},
            {"input", to_json(cert.input.transported)},
            {"output", to_json(cert.output.transported)},
            {"pass", cert.input.member && cert.pass()}};
}

inline Json res_theta_item(long p, std::uint64_t seed) {
    Sampler S(p, seed);
    int k = static_cast<int>(S.integer(0, 3));
    RationalFunction f = S.function(3, true).to_function();
    auto tree = std::make_shared<const TruncatedTree>(p, 2);
    return {{"k", k}, {"f", to_expression(f)}, {"pass", res_kills_theta(f, k, tree)}};
}

inline Json geven_item(long p, std::uint64_t seed) {
    Sampler S(p, seed);
    long k = S.integer(-5, 5);
    GroupElement g;
    do g = S.group_element();
    while (val_p(g.det(), p) % 2 != 0);
    RationalFunction f = S.function().to_function();
    Vertex v = S.vertex(2);
    Vertex gv = act_on_vertex(g, v, p);
    RationalFunction h = geven_act(g, f, k);
    Valuation shift = gauss_valuation(h, gv) - gauss_valuation(f, v);
    bool same = geven_membership(f, k, v) == geven_membership(h, k, gv);
    long expected = floor_half(k * gv.level) - floor_half(k * v.level);
    return {{"k", k}, {"vertex", v.str()}, {"image", gv.str()}, {"shift", to_json(shift)},
            {"pass", same && shift == Valuation(expected)}};
}

inline Json sweep_report(const RunConfig& c) {
    if (!is_prime(c.p)) throw InvalidParameters("p must be prime");
    if (c.samples < 1 || c.samples > 1000) throw InvalidParameters("samples must lie in [1, 1000]");
    const size_t N = static_cast<size_t>(c.samples);
    const long p = c.p;
    struct Suite {
        const char* name;
        size_t count;
        std::function<Json(size_t)> item;
    };
    std::vector<Suite> suites = {
        {"membership_equivariance", N, [&](size_t i) { return equivariance_item(p, item_seed(c.seed, 1, i)); }},
        {"valuation_identity", N, [&](size_t i) { return valuation_identity_item(p, item_seed(c.seed, 2, i), static_cast<int>(i % 4)); }},
        {"residue_harmonic_integral", std::min<size_t>(N, 20), [&](size_t i) { return residue_item(p, item_seed(c.seed, 3, i)); }},
        {"theta_integrality", N, [&](size_t i) { return theta_item(p, item_seed(c.seed, 4, i)); }},
        {"residue_kills_theta", std::min<size_t>(N, 20), [&](size_t i) { return res_theta_item(p, item_seed(c.seed, 5, i)); }},
        {"even_subgroup_membership", N, [&](size_t i) { return geven_item(p, item_seed(c.seed, 6, i)); }},
    };
    Json r;
    r["config"] = config_json("sweep", c);
    Json js = Json::object();
    bool pass = true;
    for (const auto& s : suites) {
        Json items = Json::array();
        for (auto& x : fan_out(s.count, c.threads, s.item)) items.push_back(std::move(x));
        bool ok = all_pass(items);
        pass = pass && ok;
        js[s.name] = {{"samples", s.count}, {"pass", ok}, {"items", items}};
    }
    r["suites"] = js;
    r["pass"] = pass;
    return r;
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

inline Json run(const std::string& command, const RunConfig& c) {
    if (command == "tree") return tree_report(c);
    if (command == "lattice") return lattice_report(c);
    if (command == "local-dims") return local_dims_report(c);
    if (command == "harmonic") return harmonic_report(c);
    if (command == "residue") return residue_report(c);
    if (command == "theta") return theta_report(c);
    if (command == "identity-b") return identity_b_report(c);
    if (command == "modp") return modp_report(c);
    if (command == "sweep") return sweep_report(c);
    throw InvalidParameters("unknown command '" + command + "'");
}

}  // namespace drinfeld::report
