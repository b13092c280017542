// Command-line front end for the toolkit: root data, seeds and mutation,
// generalized minors, potentials and cones, crystal fibers, the comparison
// map, the constant-bracket suite, and a one-shot verification command with
// a reproducible JSON report.

#include "tropcell/poisson.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace tropcell;
using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Flag parsing.

Isogeny default_isogeny(const std::string& type) {
    return type == "B" ? Isogeny::adjoint : Isogeny::simply_connected;
}

RootDatum datum_from_flags(const std::string& group, const std::string& isogeny) {
    if (group.size() < 2)
        throw UnsupportedType("group spec needs a type letter and a rank, e.g. A2: " + group);
    std::string type = group.substr(0, 1);
    std::string digits = group.substr(1);
    if (digits.size() > 2 || digits.find_first_not_of("0123456789") != std::string::npos)
        throw UnsupportedType("group spec needs a type letter and a rank, e.g. A2: " + group);
    Isogeny iso = isogeny.empty() ? default_isogeny(type) : isogeny_parse(isogeny);
    return build_datum(type, std::stoi(digits), iso);
}

std::vector<int> word_or_default(const RootDatum& dat, std::vector<int> letters) {
    if (letters.empty())
        for (int l : longest_word(dat).letters) letters.push_back(-l);
    return letters;
}

bool plain_integer(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    return s.find_first_not_of("0123456789", i) == std::string::npos;
}

Rat parse_rat(const std::string& s) {
    std::size_t slash = s.find('/');
    if (slash == std::string::npos) {
        if (!plain_integer(s)) throw MathError("cannot parse rational: " + s);
        return Rat(Int(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!plain_integer(num) || !plain_integer(den))
        throw MathError("cannot parse rational: " + s);
    Int d(den);
    if (d == 0) throw MathError("zero denominator in: " + s);
    return Rat(Int(num), d);
}

QVec parse_rat_list(const std::vector<std::string>& parts) {
    QVec out;
    out.reserve(parts.size());
    for (const std::string& s : parts) out.push_back(parse_rat(s));
    return out;
}

// ---------------------------------------------------------------------------
// Text rendering.

std::vector<std::string> chart_names(std::size_t r, std::size_t m) {
    std::vector<std::string> names;
    names.reserve(r + m);
    for (std::size_t j = 1; j <= r; ++j) names.push_back("x" + std::to_string(j));
    for (std::size_t k = 1; k <= m; ++k) names.push_back("xi" + std::to_string(k));
    return names;
}

std::vector<std::string> word_names(std::size_t m) {
    std::vector<std::string> names;
    names.reserve(m);
    for (std::size_t k = 1; k <= m; ++k) names.push_back("xi" + std::to_string(k));
    return names;
}

template <class Seq, class Fn>
std::string join_text(const Seq& seq, Fn&& render) {
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) out += ", ";
        out += render(seq[i]);
    }
    return out;
}

std::string qvec_text(const QVec& v) {
    return "(" + join_text(v, [](const Rat& c) { return rat_str(c); }) + ")";
}

std::string ivec_text(const IVec& v) {
    return "(" + join_text(v, [](long long c) { return std::to_string(c); }) + ")";
}

std::string intvec_text(const std::vector<int>& v) {
    return "(" + join_text(v, [](int c) { return std::to_string(c); }) + ")";
}

// Chart point with the torus block separated from the word block.
std::string split_point_text(const QVec& x, std::size_t r) {
    std::string out = "(";
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (j == r) out += " | ";
        else if (j) out += ", ";
        out += rat_str(x[j]);
    }
    return out + ")";
}

std::string crystal_point_text(const CrystalPoint& p) {
    QVec x = crystal_coords(p);
    return split_point_text(x, p.h.size());
}

std::string ineq_text(const LinIneq& q, const std::vector<std::string>& names) {
    TropForm f;
    f.a = q.a;
    f.b = q.b;
    return trop_form_str(f, names) + (q.strict ? " > 0" : " >= 0");
}

std::string qmat_text(const QMat& m, const std::string& indent) {
    std::vector<std::size_t> width(m.cols(), 0);
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i)
            width[j] = std::max(width[j], rat_str(m(i, j)).size());
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << indent << "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::string cell = rat_str(m(i, j));
            os << " " << std::string(width[j] - cell.size(), ' ') << cell;
        }
        os << " ]\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// JSON rendering.

json json_imat(const IMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json json_qvec(const QVec& v) {
    json out = json::array();
    for (const Rat& c : v) out.push_back(rat_str(c));
    return out;
}

json json_qmat(const QMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(json_qvec(m.row(i)));
    return rows;
}

json group_header(const RootDatum& dat, const DoubleWord* dw) {
    json out;
    out["group"] = dat.type + std::to_string(dat.rank());
    out["isogeny"] = isogeny_name(dat.isogeny);
    if (dw) out["word"] = dw->letters;
    return out;
}

void emit(const json& out) { std::cout << out.dump(2) << "\n"; }

// Cone rows as integer coefficient vectors; canonicalization has already
// cleared denominators and homogeneity keeps the constant at zero.
json json_cone_rows(const std::vector<LinIneq>& cone) {
    json rows = json::array();
    for (const LinIneq& q : cone) {
        if (q.b != 0 || q.strict) throw MathError("cone row is not homogeneous nonstrict");
        json row = json::array();
        for (const Rat& c : q.a) {
            if (rat_den(c) != 1) throw MathError("cone row is not integral");
            row.push_back(to_ll(rat_num(c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Plain subcommands.

int run_rootdata(const std::string& group, const std::string& isogeny) {
    RootDatum dat = datum_from_flags(group, isogeny);
    json out;
    out["type"] = dat.type;
    out["rank"] = dat.rank();
    out["isogeny"] = isogeny_name(dat.isogeny);
    out["cartan"] = json_imat(dat.A());
    out["symmetrizer"] = dat.cartan.symmetrizer;
    out["d"] = dat.lcm_d();
    out["char_basis"] = json_imat(dat.char_lattice);
    out["psi_matrix"] = json_qmat(dat.psi_matrix);
    emit(out);
    return 0;
}

json seed_json(const RootDatum& dat, const DoubleWord& dw, const Seed& sd) {
    json out = group_header(dat, &dw);
    out["index_set"] = sd.index_set;
    out["exchangeable"] = sd.exchangeable;
    out["matrix"] = json_imat(sd.matrix);
    out["skew_symmetrizer"] = sd.skew_symmetrizer;
    out["d"] = sd.d;
    return out;
}

int run_seed(const std::string& group, const std::string& isogeny, std::vector<int> letters,
             std::optional<int> mutate_at) {
    RootDatum dat = datum_from_flags(group, isogeny);
    DoubleWord dw = make_double_word(dat, word_or_default(dat, std::move(letters)));
    Seed sd = word_seed(dat, dw);
    if (mutate_at) sd = mutate_seed(sd, *mutate_at);
    emit(seed_json(dat, dw, sd));
    return 0;
}

int run_minor(const std::string& group, const std::string& isogeny, std::vector<int> letters,
              const std::vector<int>& u, const std::vector<int>& v, int i, bool as_json) {
    RootDatum dat = datum_from_flags(group, isogeny);
    GroupModel model = build_group_model(dat);
    DoubleWord dw = make_double_word(dat, word_or_default(dat, std::move(letters)));
    if (i < 1 || i > dat.rank()) throw MathError("fundamental index out of range");
    WeylWord wu, wv;
    wu.letters = u;
    wv.letters = v;
    require_reduced(dat, wu);
    require_reduced(dat, wv);
    LaurentPoly p = generalized_minor(model, factorization_chart(model, dw), wu, wv,
                                      static_cast<std::size_t>(i));
    std::vector<std::string> names = chart_names(dat.rank(), dw.size());
    if (!as_json) {
        std::cout << p.str(names) << "\n";
        return 0;
    }
    json out = group_header(dat, &dw);
    out["u"] = u;
    out["v"] = v;
    out["i"] = i;
    out["coords"] = names;
    out["minor"] = p.str(names);
    emit(out);
    return 0;
}

int run_potential(const std::string& group, const std::string& isogeny, std::vector<int> letters,
                  bool as_json) {
    RootDatum dat = datum_from_flags(group, isogeny);
    GroupModel model = build_group_model(dat);
    DoubleWord dw = make_double_word(dat, word_or_default(dat, std::move(letters)));
    PotentialData pot = bk_potential(model, dw);
    std::vector<std::string> full = chart_names(pot.rank, pot.length);
    std::vector<std::string> word = word_names(pot.length);
    if (!as_json) {
        std::cout << "coords: " << join_text(full, [](const std::string& s) { return s; }) << "\n";
        std::cout << "phi = " << pot.phi.str(full) << "\n";
        for (std::size_t i = 0; i < pot.p.size(); ++i) {
            std::cout << "p" << i + 1 << " = " << pot.p[i].str(word) << "\n";
            std::cout << "q" << i + 1 << " = " << pot.q[i].str(word) << "\n";
        }
        return 0;
    }
    json out = group_header(dat, &dw);
    out["coords"] = full;
    out["phi"] = pot.phi.str(full);
    json minors = json::array();
    for (std::size_t i = 0; i < pot.p.size(); ++i) {
        json row;
        row["index"] = i + 1;
        row["p"] = pot.p[i].str(word);
        row["q"] = pot.q[i].str(word);
        minors.push_back(std::move(row));
    }
    out["minors"] = std::move(minors);
    emit(out);
    return 0;
}

int run_cone(const std::string& group, const std::string& isogeny, std::vector<int> letters,
             bool as_json) {
    RootDatum dat = datum_from_flags(group, isogeny);
    GroupModel model = build_group_model(dat);
    DoubleWord dw = make_double_word(dat, word_or_default(dat, std::move(letters)));
    std::vector<LinIneq> cone = bk_cone(model, dw);
    std::vector<std::string> names = chart_names(dat.rank(), dw.size());
    if (!as_json) {
        for (const LinIneq& q : cone) std::cout << ineq_text(q, names) << "\n";
        return 0;
    }
    json out = group_header(dat, &dw);
    out["coords"] = names;
    out["inequalities"] = json_cone_rows(cone);
    emit(out);
    return 0;
}

int run_crystal(const std::string& group, const std::string& isogeny, std::vector<int> letters,
                const std::vector<long long>& fiber, bool dot, bool as_json) {
    RootDatum dat = datum_from_flags(group, isogeny);
    GroupModel model = build_group_model(dat);
    DoubleWord dw = make_double_word(dat, word_or_default(dat, std::move(letters)));
    if (fiber.size() != static_cast<std::size_t>(dat.rank()))
        throw MathError("fiber label has the wrong size");
    std::vector<LinIneq> cone = bk_cone(model, dw);
    std::vector<CrystalPoint> pts = fiber_enumerate(dat, dw, cone, fiber);
    std::sort(pts.begin(), pts.end());
    if (dot) {
        std::map<CrystalPoint, std::size_t> index;
        for (std::size_t p = 0; p < pts.size(); ++p) index[pts[p]] = p;
        static const char* palette[] = {"crimson", "royalblue", "forestgreen", "darkorange"};
        std::cout << "digraph crystal {\n  rankdir=BT;\n  node [shape=box];\n";
        for (std::size_t p = 0; p < pts.size(); ++p)
            std::cout << "  p" << p << " [label=\"" << crystal_point_text(pts[p]) << "\"];\n";
        for (std::size_t p = 0; p < pts.size(); ++p)
            for (int i = 1; i <= static_cast<int>(dat.rank()); ++i)
                if (auto nx = crystal_apply(dat, dw, cone, pts[p], i, false)) {
                    const char* color = palette[static_cast<std::size_t>(i - 1) % 4];
                    std::cout << "  p" << p << " -> p" << index.at(*nx) << " [label=\"" << i
                              << "\", color=\"" << color << "\"];\n";
                }
        std::cout << "}\n";
        return 0;
    }
    if (!as_json) {
        std::cout << "fiber over " << ivec_text(fiber) << ": " << pts.size() << " points\n";
        for (const CrystalPoint& p : pts) std::cout << crystal_point_text(p) << "\n";
        return 0;
    }
    json out = group_header(dat, &dw);
    out["lambda_vee"] = fiber;
    out["count"] = pts.size();
    json arr = json::array();
    for (const CrystalPoint& p : pts) {
        json row;
        row["h"] = p.h;
        row["xi"] = p.xi;
        arr.push_back(std::move(row));
    }
    out["points"] = std::move(arr);
    emit(out);
    return 0;
}

int run_compare(const std::string& group, const std::string& isogeny, std::vector<int> letters,
                const std::vector<std::string>& point, bool as_json) {
    RootDatum dat = datum_from_flags(group, isogeny);
    DoubleWord dw = make_double_word(dat, word_or_default(dat, std::move(letters)));
    QVec x = parse_rat_list(point);
    if (x.size() != static_cast<std::size_t>(dat.rank()) + dw.size())
        throw MathError("point has the wrong number of coordinates");
    QVec y = comparison_map(dat, dw).eval(x);
    if (!as_json) {
        std::cout << qvec_text(y) << "\n";
        return 0;
    }
    json out = group_header(dat, &dw);
    out["point"] = json_qvec(x);
    out["image"] = json_qvec(y);
    emit(out);
    return 0;
}

// ---------------------------------------------------------------------------
// Constant-bracket subcommands.

int run_poisson_bracket(const std::string& group, const std::string& isogeny,
                        std::vector<int> letters, bool as_json) {
    RootDatum dat = datum_from_flags(group, isogeny);
    DoubleWord dw = make_double_word(dat, word_or_default(dat, std::move(letters)));
    BracketBlock blk = build_bracket_block(dat, dw);
    if (!as_json) {
        std::cout << "word: " << intvec_text(dw.letters) << "\n";
        std::cout << "rows: " << intvec_text(blk.b_rows) << "\n";
        std::cout << "B =\n" << qmat_text(blk.B, "  ");
        QVec diag;
        for (std::size_t j = 0; j < blk.D.rows(); ++j) diag.push_back(blk.D(j, j));
        std::cout << "D = diag" << qvec_text(diag) << "\n";
        std::cout << "B' =\n" << qmat_text(blk.Bprime, "  ");
        std::cout << "casimir rows: " << intvec_text(blk.casimir_rows) << "\n";
        return 0;
    }
    json out = group_header(dat, &dw);
    out["rows"] = blk.b_rows;
    out["B"] = json_qmat(blk.B);
    out["D"] = json_qmat(blk.D);
    out["Bprime"] = json_qmat(blk.Bprime);
    out["casimir_rows"] = blk.casimir_rows;
    emit(out);
    return 0;
}

int run_poisson_bs(const std::string& group, const std::string& isogeny, std::vector<int> letters,
                   const std::vector<long long>& lambda, long long box, bool as_json) {
    RootDatum dat = datum_from_flags(group, isogeny);
    GroupModel model = build_group_model(dat);
    DoubleWord dw = make_double_word(dat, word_or_default(dat, std::move(letters)));
    if (lambda.size() != static_cast<std::size_t>(dat.rank()))
        throw MathError("weight has the wrong size");
    PTSkeleton sk = build_skeleton(model, dw);
    BSLattice bs = bs_lattice(sk, to_qvec(lambda), box);
    if (!as_json) {
        std::cout << "lambda: " << ivec_text(lambda) << "\n";
        std::cout << "lambda_vee: " << ivec_text(bs.lambda_vee) << "\n";
        std::cout << "grid denominator: " << bs.grid_den << "\n";
        std::cout << "points: " << bs.points.size() << "\n";
        for (std::size_t p = 0; p < bs.points.size(); ++p)
            std::cout << "point " << split_point_text(bs.points[p], sk.rank())
                      << " multipliers " << ivec_text(bs.multipliers[p]) << "\n";
        return 0;
    }
    json out = group_header(dat, &dw);
    out["lambda"] = lambda;
    out["lambda_vee"] = bs.lambda_vee;
    out["grid_den"] = bs.grid_den;
    out["count"] = bs.points.size();
    json arr = json::array(), mult = json::array();
    for (std::size_t p = 0; p < bs.points.size(); ++p) {
        arr.push_back(json_qvec(bs.points[p]));
        mult.push_back(bs.multipliers[p]);
    }
    out["points"] = std::move(arr);
    out["multipliers"] = std::move(mult);
    emit(out);
    return 0;
}

int run_poisson_volume(const std::string& group, const std::string& isogeny,
                       std::vector<int> letters, const std::vector<long long>& lambda_vee,
                       long long n_max, bool as_json) {
    RootDatum dat = datum_from_flags(group, isogeny);
    GroupModel model = build_group_model(dat);
    DoubleWord dw = make_double_word(dat, word_or_default(dat, std::move(letters)));
    if (lambda_vee.size() != static_cast<std::size_t>(dat.rank()))
        throw MathError("label has the wrong size");
    PTSkeleton sk = build_skeleton(model, dw);
    VolumeTable table = volume(sk, lambda_vee, n_max);
    if (!as_json) {
        std::cout << "lambda_vee: " << ivec_text(table.lambda_vee) << "; weight: "
                  << qvec_text(table.lambda) << "; weyl product: "
                  << rat_str(table.weyl_product) << "\n";
        std::cout << "scale\tcount\texpected\tratio\n";
        for (const VolumeRow& row : table.rows) {
            std::ostringstream approx;
            approx.setf(std::ios::fixed);
            approx.precision(6);
            approx << rat_double(row.ratio);
            std::cout << row.scale << "\t" << row.count << "\t" << rat_str(row.expected) << "\t"
                      << rat_str(row.ratio) << " (" << approx.str() << ")\n";
        }
        return 0;
    }
    json out = group_header(dat, &dw);
    out["lambda_vee"] = table.lambda_vee;
    out["lambda"] = json_qvec(table.lambda);
    out["weyl_product"] = rat_str(table.weyl_product);
    json rows = json::array();
    for (const VolumeRow& row : table.rows) {
        json r;
        r["scale"] = row.scale;
        r["count"] = row.count;
        r["expected"] = rat_str(row.expected);
        r["ratio"] = rat_str(row.ratio);
        r["ratio_approx"] = rat_double(row.ratio);
        rows.push_back(std::move(r));
    }
    out["rows"] = std::move(rows);
    emit(out);
    return 0;
}

int run_poisson_leaves(const std::string& group, const std::string& isogeny,
                       std::vector<int> letters, const std::vector<long long>& lambda_vee,
                       bool as_json) {
    RootDatum dat = datum_from_flags(group, isogeny);
    GroupModel model = build_group_model(dat);
    DoubleWord dw = make_double_word(dat, word_or_default(dat, std::move(letters)));
    if (lambda_vee.size() != static_cast<std::size_t>(dat.rank()))
        throw MathError("label has the wrong size");
    PTSkeleton sk = build_skeleton(model, dw);
    LeafDescription leaf = leaves(sk, lambda_vee);
    std::vector<std::string> xi = word_names(sk.angles);
    if (!as_json) {
        std::cout << "lambda_vee: " << ivec_text(leaf.lambda_vee) << "; regular: "
                  << (leaf.regular ? "yes" : "no") << "\n";
        std::cout << "root pairings: " << qvec_text(leaf.root_pairings) << "\n";
        std::cout << "casimir rows: " << intvec_text(leaf.casimir_rows) << "; values: "
                  << qvec_text(leaf.casimir_values) << "\n";
        std::cout << "slice dimension: " << leaf.xi_dimension << "; leaf dimension: "
                  << leaf.dimension << "\n";
        std::cout << "fiber constraints:\n";
        for (const LinIneq& q : leaf.fiber) std::cout << "  " << ineq_text(q, xi) << "\n";
        return 0;
    }
    json out = group_header(dat, &dw);
    out["lambda_vee"] = leaf.lambda_vee;
    out["regular"] = leaf.regular;
    out["root_pairings"] = json_qvec(leaf.root_pairings);
    out["casimir_rows"] = leaf.casimir_rows;
    out["casimir_values"] = json_qvec(leaf.casimir_values);
    out["xi_dimension"] = leaf.xi_dimension;
    out["dimension"] = leaf.dimension;
    json rows = json::array();
    for (const LinIneq& q : leaf.fiber) rows.push_back(ineq_text(q, xi));
    out["fiber"] = std::move(rows);
    emit(out);
    return 0;
}

// ---------------------------------------------------------------------------
// Verification suite.

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = {
        "denominator_identity", "cone_comparison",  "transition_comparison",
        "bracket_factorization", "fiber_dimensions", "crystal_scaling",
        "bs_duality",            "volume_identity",  "quantizability"};
    return names;
}

// Labels with coordinates in [lo, hi] whose pairings with the simple roots
// are all nonnegative, in odometer order.
std::vector<IVec> dominant_labels(const RootDatum& dat, long long lo, long long hi) {
    std::size_t r = static_cast<std::size_t>(dat.rank());
    std::vector<IVec> out;
    IVec cur(r, lo);
    while (true) {
        QVec pairings = coweight_root_pairings(dat, cur);
        if (std::all_of(pairings.begin(), pairings.end(), [](const Rat& c) { return c >= 0; }))
            out.push_back(cur);
        std::size_t j = 0;
        while (j < r && cur[j] == hi) {
            cur[j] = lo;
            ++j;
        }
        if (j == r) break;
        ++cur[j];
    }
    return out;
}

// Smallest label in the search box with all root pairings at least one.
IVec regular_witness(const RootDatum& dat, long long hi) {
    for (const IVec& lv : dominant_labels(dat, 1, hi)) {
        QVec pairings = coweight_root_pairings(dat, lv);
        if (std::all_of(pairings.begin(), pairings.end(), [](const Rat& c) { return c >= 1; }))
            return lv;
    }
    throw MathError("no regular label in the search box");
}

// Both dimension formulas must see a dominant weight after the rho shift.
bool corollary_label_applies(const RootDatum& dat, const IVec& lv) {
    std::size_t r = static_cast<std::size_t>(dat.rank());
    for (const Rat& c : coweight_root_pairings(dat, lv))
        if (c < 1) return false;
    QVec lam = psi_apply(dat, to_qvec(lv));
    if (!qvec_is_integral(lam)) return false;
    for (std::size_t j = 0; j < r; ++j) {
        Rat omega(0);
        for (std::size_t b = 0; b < r; ++b) omega += lam[b] * Rat(dat.char_lattice(b, j));
        if (omega < 1) return false;
    }
    return true;
}

struct VerifyContext {
    RootDatum dat, dual;
    GroupModel model, dual_model;
    DoubleWord dw, dual_dw;
    std::size_t samples;
    std::uint64_t seed;
    long long box, grid;
    std::optional<PTSkeleton> skeleton;
    std::optional<std::vector<LinIneq>> cone_cache, dual_cone_cache;

    const PTSkeleton& sk() {
        if (!skeleton) skeleton = build_skeleton(model, dw);
        return *skeleton;
    }
    const std::vector<LinIneq>& cone() {
        if (!cone_cache) cone_cache = bk_cone(model, dw);
        return *cone_cache;
    }
    const std::vector<LinIneq>& dual_cone() {
        if (!dual_cone_cache) dual_cone_cache = bk_cone(dual_model, dual_dw);
        return *dual_cone_cache;
    }
};

json check_denominator_identity(VerifyContext& ctx, bool& ok) {
    json cx = json::array();
    for (const RootDatum* dat : {&ctx.dat, &ctx.dual})
        if (!denominator_identity_check(*dat))
            cx.push_back({{"datum", dat->type + std::to_string(dat->rank()) + " " +
                                        isogeny_name(dat->isogeny)}});
    ok = cx.empty();
    return cx;
}

json check_cone_comparison(VerifyContext& ctx, bool& ok) {
    ConeComparisonReport rep = verify_cone_comparison(ctx.model, ctx.dual_model,
                                                      ctx.dw.letters, ctx.samples, ctx.seed);
    ok = rep.ok();
    json cx = json::array();
    if (!ok)
        cx.push_back({{"samples", rep.samples},
                      {"inside", rep.inside},
                      {"membership_failures", rep.membership_failures},
                      {"integrality_failures", rep.integrality_failures}});
    return cx;
}

json check_transition_comparison(VerifyContext& ctx, bool& ok) {
    TransitionComparisonReport rep = verify_transition_comparison(
        ctx.model, ctx.dual_model, ctx.dw.letters, ctx.samples, ctx.seed);
    ok = rep.ok();
    json cx = json::array();
    for (const QVec& x : rep.counterexamples) cx.push_back({{"point", json_qvec(x)}});
    return cx;
}

json check_bracket_factorization(VerifyContext& ctx, bool& ok) {
    json cx = json::array();
    std::size_t r = static_cast<std::size_t>(ctx.dat.rank());
    for (const WeylWord& w : reduced_words_of_w0(ctx.dat)) {
        std::vector<int> letters;
        for (int l : w.letters) letters.push_back(-l);
        try {
            BracketBlock blk = build_bracket_block(ctx.dat, make_double_word(ctx.dat, letters));
            Rat det_expected(1);
            for (int l : w.letters) det_expected /= Rat(ctx.dat.d(l));
            if (qmat_det(blk.B) != det_expected)
                cx.push_back({{"word", letters}, {"issue", "determinant mismatch"}});
            for (int k : blk.casimir_rows) {
                QVec row = blk.table.row(r + static_cast<std::size_t>(k) - 1);
                if (!std::all_of(row.begin(), row.end(), [](const Rat& c) { return c == 0; }))
                    cx.push_back({{"word", letters}, {"issue", "nonzero casimir bracket row"}});
            }
        } catch (const MathError& e) {
            cx.push_back({{"word", letters}, {"error", e.what()}});
        }
    }
    ok = cx.empty();
    return cx;
}

json check_fiber_dimensions(VerifyContext& ctx, bool& ok) {
    json cx = json::array();
    for (const IVec& lv : dominant_labels(ctx.dat, 0, ctx.grid)) {
        std::size_t count = fiber_enumerate(ctx.dat, ctx.dw, ctx.cone(), lv).size();
        Rat expected = weyl_dim(ctx.dual, coweight_root_pairings(ctx.dat, lv));
        if (Rat(Int(count)) != expected)
            cx.push_back(
                {{"lambda_vee", lv}, {"count", count}, {"expected", rat_str(expected)}});
    }
    ok = cx.empty();
    return cx;
}

json check_crystal_scaling(VerifyContext& ctx, bool& ok) {
    json cx = json::array();
    for (const IVec& lv : dominant_labels(ctx.dat, 0, ctx.grid)) {
        CrystalScalingReport rep =
            verify_crystal_scaling(ctx.dat, ctx.dual, ctx.dw, ctx.dual_dw, ctx.cone(),
                                   ctx.dual_cone(), lv);
        if (!rep.ok())
            cx.push_back({{"lambda_vee", lv},
                          {"points", rep.points},
                          {"checks", rep.checks},
                          {"failures", rep.failures}});
    }
    ok = cx.empty();
    return cx;
}

json check_bs_duality(VerifyContext& ctx, bool& ok) {
    json cx = json::array();
    for (const IVec& lv : dominant_labels(ctx.dat, 0, 1)) {
        QVec lambda = psi_apply(ctx.dat, to_qvec(lv));
        if (!qvec_is_integral(lambda)) continue;
        DualityReport rep = verify_bs_duality(ctx.sk(), ctx.dual_cone(), ctx.dat.psi_matrix,
                                              lambda, ctx.box);
        if (!rep.ok()) {
            json item;
            item["lambda"] = json_qvec(lambda);
            item["primal_count"] = rep.primal_count;
            item["dual_count"] = rep.dual_count;
            item["nonintegral_images"] = rep.nonintegral_images.size();
            json missing = json::array(), extra = json::array();
            for (std::size_t p = 0; p < rep.missing.size() && p < 3; ++p)
                missing.push_back(rep.missing[p]);
            for (std::size_t p = 0; p < rep.extra.size() && p < 3; ++p)
                extra.push_back(rep.extra[p]);
            item["missing"] = std::move(missing);
            item["extra"] = std::move(extra);
            cx.push_back(std::move(item));
        }
    }
    ok = cx.empty();
    return cx;
}

json check_volume_identity(VerifyContext& ctx, bool& ok) {
    std::vector<IVec> labels;
    for (const IVec& lv : dominant_labels(ctx.dat, 1, 4))
        if (corollary_label_applies(ctx.dat, lv)) labels.push_back(lv);
    json cx = json::array();
    if (labels.empty()) {
        cx.push_back({{"issue", "no applicable label in the search box"}});
        ok = false;
        return cx;
    }
    for (const CorollaryVolRow& row : corollary_vol_check(ctx.dat, labels))
        if (!row.ok)
            cx.push_back({{"lambda_vee", row.lambda_vee},
                          {"lhs", rat_str(row.lhs)},
                          {"rhs", rat_str(row.rhs)},
                          {"factor", row.root_factor.str()}});
    ok = cx.empty();
    return cx;
}

json check_quantizability(VerifyContext& ctx, bool& ok) {
    json cx = json::array();
    IVec witness = regular_witness(ctx.dat, 3);
    TropPoissonVariety variety = to_trop_variety(ctx.sk());
    try {
        if (!quantizability_check(variety, witness, 1, 16))
            cx.push_back({{"witness", witness}, {"issue", "lattice inclusion fails"}});
    } catch (const InconclusiveWitness& e) {
        cx.push_back({{"witness", witness}, {"issue", e.what()}});
    }
    ok = cx.empty();
    return cx;
}

int run_verify(const std::string& scope, const std::string& group, const std::string& isogeny,
               std::vector<int> letters, std::size_t samples, std::uint64_t seed, long long box,
               long long grid) {
    const std::vector<std::string>& names = check_names();
    if (scope != "all" && std::find(names.begin(), names.end(), scope) == names.end())
        throw MathError("unknown check: " + scope);

    RootDatum dat = datum_from_flags(group, isogeny);
    RootDatum dual = langlands_dual(dat);
    std::vector<int> word = word_or_default(dat, std::move(letters));
    VerifyContext ctx{dat,
                      dual,
                      build_group_model(dat),
                      build_group_model(dual),
                      make_double_word(dat, word),
                      make_double_word(dual, word),
                      samples,
                      seed,
                      box,
                      grid,
                      std::nullopt,
                      std::nullopt,
                      std::nullopt};

    using CheckFn = json (*)(VerifyContext&, bool&);
    static const std::map<std::string, CheckFn> table = {
        {"denominator_identity", check_denominator_identity},
        {"cone_comparison", check_cone_comparison},
        {"transition_comparison", check_transition_comparison},
        {"bracket_factorization", check_bracket_factorization},
        {"fiber_dimensions", check_fiber_dimensions},
        {"crystal_scaling", check_crystal_scaling},
        {"bs_duality", check_bs_duality},
        {"volume_identity", check_volume_identity},
        {"quantizability", check_quantizability},
    };

    json checks = json::array();
    bool all_ok = true;
    for (const std::string& name : names) {
        if (scope != "all" && scope != name) continue;
        bool ok = false;
        json cx;
        try {
            cx = table.at(name)(ctx, ok);
        } catch (const MathError& e) {
            ok = false;
            cx = json::array({{{"error", e.what()}}});
        }
        json entry;
        entry["check"] = name;
        entry["status"] = ok ? "ok" : "failed";
        entry["counterexamples"] = std::move(cx);
        checks.push_back(std::move(entry));
        all_ok = all_ok && ok;
    }

    json out = group_header(dat, &ctx.dw);
    out["scope"] = scope;
    out["seed"] = seed;
    out["samples"] = samples;
    out["box"] = box;
    out["grid"] = grid;
    out["status"] = all_ok ? "ok" : "failed";
    out["checks"] = std::move(checks);
    emit(out);
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for factorization charts, potentials, crystals and the "
                 "constant bracket on double Bruhat cells"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "tropcell 0.1.0");
    int rc = 0;

    struct {
        std::string group, isogeny;
        std::vector<int> word;
        bool as_json = false;
    } o_root, o_seed, o_mutate, o_minor, o_pot, o_cone, o_crystal, o_compare, o_bracket, o_bs,
        o_vol, o_leaves, o_verify;

    auto add_group = [](CLI::App* sub, auto& o, bool with_word, bool with_json) {
        sub->add_option("--group", o.group, "group type and rank: A1, A2, A3, B2 or C2")
            ->required();
        sub->add_option("--isogeny", o.isogeny,
                        "torus form, sc or adjoint (default: adjoint for B, sc otherwise)");
        if (with_word)
            sub->add_option("--word", o.word,
                            "double word as signed letters, e.g. -1,-2,-1 (default: a "
                            "lowering word for the longest element)")
                ->delimiter(',');
        if (with_json) sub->add_flag("--json", o.as_json, "emit JSON instead of text");
    };

    auto* c_root = app.add_subcommand("rootdata", "print a root datum as JSON");
    add_group(c_root, o_root, false, false);
    c_root->callback([&] { rc = run_rootdata(o_root.group, o_root.isogeny); });

    auto* c_seed = app.add_subcommand("seed", "print the seed attached to a double word");
    add_group(c_seed, o_seed, true, false);
    c_seed->callback([&] { rc = run_seed(o_seed.group, o_seed.isogeny, o_seed.word, {}); });

    auto* c_mutate = app.add_subcommand("mutate", "mutate the seed of a double word at a label");
    add_group(c_mutate, o_mutate, true, false);
    int mutate_at = 0;
    c_mutate->add_option("--at", mutate_at, "exchangeable label to mutate at")->required();
    c_mutate->callback(
        [&] { rc = run_seed(o_mutate.group, o_mutate.isogeny, o_mutate.word, mutate_at); });

    auto* c_minor = app.add_subcommand(
        "minor", "evaluate a generalized minor on the factorization chart");
    add_group(c_minor, o_minor, true, true);
    std::vector<int> minor_u, minor_v;
    int minor_i = 1;
    c_minor->add_option("--u", minor_u, "reduced word for the row twist")->delimiter(',');
    c_minor->add_option("--v", minor_v, "reduced word for the column twist")->delimiter(',');
    c_minor->add_option("--i", minor_i, "fundamental index")->required();
    c_minor->callback([&] {
        rc = run_minor(o_minor.group, o_minor.isogeny, o_minor.word, minor_u, minor_v, minor_i,
                       o_minor.as_json);
    });

    auto* c_pot = app.add_subcommand("potential", "print the chart potential and its minors");
    add_group(c_pot, o_pot, true, true);
    c_pot->callback(
        [&] { rc = run_potential(o_pot.group, o_pot.isogeny, o_pot.word, o_pot.as_json); });

    auto* c_cone = app.add_subcommand("cone", "print the tropical cone of the chart potential");
    add_group(c_cone, o_cone, true, true);
    c_cone->callback(
        [&] { rc = run_cone(o_cone.group, o_cone.isogeny, o_cone.word, o_cone.as_json); });

    auto* c_crystal = app.add_subcommand(
        "crystal", "enumerate one fiber of the cone with its crystal operators");
    add_group(c_crystal, o_crystal, true, true);
    std::vector<long long> crystal_fiber;
    bool crystal_dot = false;
    c_crystal->add_option("--fiber", crystal_fiber, "fiber label in cocharacter coordinates")
        ->required()
        ->delimiter(',');
    c_crystal->add_flag("--dot", crystal_dot, "emit a DOT graph with letter-colored edges");
    c_crystal->callback([&] {
        rc = run_crystal(o_crystal.group, o_crystal.isogeny, o_crystal.word, crystal_fiber,
                         crystal_dot, o_crystal.as_json);
    });

    auto* c_compare = app.add_subcommand("compare",
                                         "apply the comparison map onto the dual chart");
    add_group(c_compare, o_compare, true, true);
    std::vector<std::string> compare_point;
    c_compare->add_option("--point", compare_point, "chart point, rational coordinates")
        ->required()
        ->delimiter(',');
    c_compare->callback([&] {
        rc = run_compare(o_compare.group, o_compare.isogeny, o_compare.word, compare_point,
                         o_compare.as_json);
    });

    auto* c_poisson = app.add_subcommand(
        "poisson", "constant bracket tools: factors, leaves, point lattices, volumes");
    c_poisson->require_subcommand(1);

    auto* c_bracket = c_poisson->add_subcommand(
        "bracket", "print the action-angle bracket block and its factors");
    add_group(c_bracket, o_bracket, true, true);
    c_bracket->callback([&] {
        rc = run_poisson_bracket(o_bracket.group, o_bracket.isogeny, o_bracket.word,
                                 o_bracket.as_json);
    });

    auto* c_bs = c_poisson->add_subcommand(
        "bs", "enumerate the distinguished point lattice of a fiber inside a box");
    add_group(c_bs, o_bs, true, true);
    std::vector<long long> bs_lambda;
    long long bs_box = 12;
    c_bs->add_option("--lambda", bs_lambda, "weight in character coordinates")
        ->required()
        ->delimiter(',');
    c_bs->add_option("--box", bs_box, "coordinate bound for the enumeration (default 12)");
    c_bs->callback([&] {
        rc = run_poisson_bs(o_bs.group, o_bs.isogeny, o_bs.word, bs_lambda, bs_box,
                            o_bs.as_json);
    });

    auto* c_vol = c_poisson->add_subcommand(
        "volume", "count fiber points under dilation against the Weyl product");
    add_group(c_vol, o_vol, true, true);
    std::vector<long long> vol_lambda;
    long long vol_n = 20;
    c_vol->add_option("--lambda", vol_lambda,
                      "regular dominant label in cocharacter coordinates")
        ->required()
        ->delimiter(',');
    c_vol->add_option("--N", vol_n, "largest dilation factor (default 20)");
    c_vol->callback([&] {
        rc = run_poisson_volume(o_vol.group, o_vol.isogeny, o_vol.word, vol_lambda, vol_n,
                                o_vol.as_json);
    });

    auto* c_leaves = c_poisson->add_subcommand(
        "leaves", "describe the symplectic leaf over a dominant label");
    add_group(c_leaves, o_leaves, true, true);
    std::vector<long long> leaves_lambda;
    c_leaves->add_option("--lambda", leaves_lambda,
                         "dominant label in cocharacter coordinates")
        ->required()
        ->delimiter(',');
    c_leaves->callback([&] {
        rc = run_poisson_leaves(o_leaves.group, o_leaves.isogeny, o_leaves.word, leaves_lambda,
                                o_leaves.as_json);
    });

    auto* c_verify = app.add_subcommand(
        "verify", "run the theorem checks and exit nonzero on any discrepancy");
    add_group(c_verify, o_verify, true, false);
    std::string verify_scope = "all";
    std::size_t verify_samples = 2000;
    std::uint64_t verify_seed = 2024;
    long long verify_box = 12, verify_grid = 2;
    c_verify->add_option("scope", verify_scope, "which check to run, or 'all'");
    c_verify->add_option("--samples", verify_samples,
                         "sample count for the randomized checks (default 2000)");
    c_verify->add_option("--seed", verify_seed, "sampling seed, recorded in the report");
    c_verify->add_option("--box", verify_box, "box bound for the lattice checks (default 12)");
    c_verify->add_option("--grid", verify_grid,
                         "coordinate bound for the label sweeps (default 2)");
    c_verify->callback([&] {
        rc = run_verify(verify_scope, o_verify.group, o_verify.isogeny, o_verify.word,
                        verify_samples, verify_seed, verify_box, verify_grid);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return 2;
    } catch (const TheoremSymViolation& e) {
        std::cerr << "theorem check failed: " << e.what() << "\n";
        return 1;
    } catch (const MathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
