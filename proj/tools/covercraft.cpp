// covercraft: construct, verify and tabulate covering codes and saturating sets.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "covercraft/blocking.hpp"
#include "covercraft/concat.hpp"
#include "covercraft/families.hpp"
#include "covercraft/io.hpp"
#include "covercraft/search.hpp"

using namespace covercraft;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kPrecondition = 2, kMismatch = 3, kCap = 4 };

int exit_for(ErrorKind k) {
    return (k == ErrorKind::CapExceeded || k == ErrorKind::BudgetExceeded) ? kCap : kPrecondition;
}

std::string str(const BigInt& x) { return x.str(); }

template <class T>
std::string opt_str(const std::optional<T>& x) {
    if (!x) return "none";
    std::ostringstream os;
    os << *x;
    return os.str();
}

// Collected while a command runs; printed once at the end.
struct RunReport {
    json j = json::object();
    int exit = kOk;
    std::string csv;  // tabular commands print this in text mode

    RunReport() {
        j["inputs"] = json::array();
        j["outputs"] = json::array();
        j["statuses"] = json::array();
    }

    void input(const std::string& path) { j["inputs"].push_back({{"path", path}, {"digest", file_digest(path)}}); }
    void output(const std::string& path, const std::string& kind) {
        j["outputs"].push_back({{"path", path}, {"kind", kind}, {"digest", file_digest(path)}});
    }
    void inline_output(const std::string& kind, const std::string& text) {
        j["outputs"].push_back({{"kind", kind}, {"inline", text}});
    }
    // ok = nullopt: asserted only, too large to check here
    void status(const std::string& name, const std::string& claimed, const std::string& computed,
                std::optional<bool> ok, const std::string& detail = "") {
        json s{{"check", name}, {"claimed", claimed}, {"computed", computed}};
        s["status"] = !ok ? "ASSERTED" : (*ok ? "VERIFIED" : "MISMATCH");
        if (!detail.empty()) s["detail"] = detail;
        j["statuses"].push_back(s);
        if (ok && !*ok) exit = std::max(exit, int(kMismatch));
    }
    void set(const std::string& k, json v) { j[k] = std::move(v); }
};

struct Globals {
    bool as_json = false;
    unsigned threads = 0;
    std::optional<double> budget;
    std::string data_dir = COVERCRAFT_DATA_DIR;

    SearchOptions search() const {
        SearchOptions o;
        o.threads = threads;
        if (budget) o.budget_secs = *budget;
        return o;
    }
};

Field field_arg(std::uint64_t q) { return field_of_order(q); }

void emit_points(RunReport& rep, const std::string& out, const PointSet& s) {
    if (out.empty() || out == "-") {
        std::ostringstream os;
        write_points(os, s);
        rep.inline_output("points", os.str());
    } else {
        save_points(out, s);
        rep.output(out, "points");
    }
}

void emit_code(RunReport& rep, const std::string& out, const Code& c, const std::string& provenance = "") {
    std::ostringstream os;
    if (!provenance.empty()) os << "# " << provenance << '\n';
    write_code(os, c);
    if (out.empty() || out == "-") {
        rep.inline_output("code", os.str());
    } else {
        std::ofstream f(out);
        if (!f) throw Error(ErrorKind::Parse, "cannot write " + out);
        f << os.str();
        f.close();
        rep.output(out, "code");
    }
}

Code input_code(RunReport& rep, const std::string& path) {
    rep.input(path);
    return load_code(path);
}

PointSet input_points(RunReport& rep, const std::string& path) {
    rep.input(path);
    return load_points(path);
}

// Radius check that degrades to "asserted" when q^r is beyond the cap.
void radius_status(RunReport& rep, const Code& c, int claim, bool assert_on_cap) {
    try {
        const int r = covering_radius(c);
        rep.status("covering radius", std::to_string(claim), std::to_string(r), r == claim);
    } catch (const Error& e) {
        if (!assert_on_cap || e.kind() != ErrorKind::CapExceeded) throw;
        rep.status("covering radius", std::to_string(claim), "not computed", std::nullopt, e.what());
    }
}

void saturating_status(RunReport& rep, const PointSet& s, int rho, const std::string& where) {
    const auto r = verify_saturating(s, rho);
    rep.status(std::to_string(rho) + "-saturating in " + where, std::to_string(rho), opt_str(r.smallest_rho),
               r.matches_claim());
}

// same coordinates, read over the degree-`factor` extension
PointSet lift(const PointSet& s, std::uint32_t factor) {
    const Field& sub = s.field();
    const Field sup = Field::create(sub.p(), sub.degree() * factor);
    const Embedding emb(sub, sup);
    std::vector<Point> pts;
    for (const auto& x : s) {
        Point y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = emb(x[i]);
        pts.push_back(std::move(y));
    }
    return PointSet::from_unique(s.v(), sup, std::move(pts));
}

std::string pg_name(int v, std::uint64_t q) { return "PG(" + std::to_string(v) + "," + std::to_string(q) + ")"; }

void size_status(RunReport& rep, std::size_t got, const BigInt& want) {
    rep.status("size", str(want), std::to_string(got), BigInt(got) == want);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Covering codes, saturating sets and strong blocking sets over finite fields"};
    app.require_subcommand(1);
    Globals g;
    app.add_flag("--json", g.as_json, "print the run report as JSON");
    app.add_option("--threads", g.threads, "worker threads for searches (0: all cores)");
    app.add_option("--budget", g.budget, "search time budget in seconds (default: COVERCRAFT_BUDGET_SECS or 60)");
    app.add_option("--data", g.data_dir, "directory holding the stored tables");

    std::function<void(RunReport&)> action;
    auto bind = [&](CLI::App* sub, std::function<void(RunReport&)> fn) {
        sub->callback([&action, fn] { action = fn; });
    };

    // ------------------------------------------------------------ construct
    auto* construct = app.add_subcommand("construct", "build a code or point set and verify it");
    construct->require_subcommand(1);
    std::uint64_t q = 0;
    std::string out;
    bool skip_sat = false;

    auto* c_four = construct->add_subcommand("four-lines", "four skew lines of PG(3,q), 3-fold strong blocking");
    c_four->add_option("--q", q, "field order")->required();
    c_four->add_option("-o,--out", out, "point set file");
    c_four->add_flag("--skip-saturating", skip_sat, "do not check the 2-saturating image in PG(3,q^3)");
    bind(c_four, [&](RunReport& rep) {
        const Field f = field_arg(q);
        const auto fl = four_lines_set(f);
        emit_points(rep, out, fl.set);
        rep.set("k", fl.k);
        size_status(rep, fl.set.size(), BigInt(4 * q + 4));
        const auto b = verify_strong_blocking(fl.set, 3);
        rep.status("3-fold strong blocking in " + pg_name(3, q), "true", b.is_tfold_strong ? "true" : "false",
                   b.is_tfold_strong);
        if (!skip_sat) saturating_status(rep, strong_to_saturating(fl.set, 2), 2, pg_name(3, q * q * q));
    });

    int v = 0, k = 0;
    auto* c_a = construct->add_subcommand("construction-a", "cone steps from the four-lines set up to PG(v,q)");
    c_a->add_option("--q", q, "field order")->required();
    c_a->add_option("--v", v, "target dimension, at least 4")->required();
    c_a->add_option("-o,--out", out, "point set file");
    bind(c_a, [&](RunReport& rep) {
        if (v < 4) throw Error(ErrorKind::DomainViolation, "construction A starts in PG(3,q); need v >= 4");
        const Field f = field_arg(q);
        PointSet B = four_lines_set(f).set;
        for (int d = 4; d <= v; ++d) B = construction_a_step(B, false);
        emit_points(rep, out, B);
        size_status(rep, B.size(), BigInt(q - 1) * (v * (v + 1) / 2 - 2) + v + 5);
        const auto b = verify_strong_blocking(B, v);
        rep.status(std::to_string(v) + "-fold strong blocking in " + pg_name(v, q), "true",
                   b.is_tfold_strong ? "true" : "false", b.is_tfold_strong);
    });

    auto* c_w = construct->add_subcommand("weight-bk", "points of weight at most v-k+1");
    c_w->add_option("--q", q, "field order")->required();
    c_w->add_option("--v", v, "dimension")->required();
    c_w->add_option("--k", k, "1 <= k <= v-1")->required();
    c_w->add_option("-o,--out", out, "point set file");
    bind(c_w, [&](RunReport& rep) {
        const Field f = field_arg(q);
        const auto s = weight_set_bk(v, f, k);
        emit_points(rep, out, s);
        size_status(rep, s.size(), (sphere_size(std::uint64_t(v + 1), std::uint64_t(v - k + 1), q) - 1) / (q - 1));
        try {
            const auto b = verify_strong_blocking(s, k + 1);
            rep.status(std::to_string(k + 1) + "-fold strong blocking in " + pg_name(v, q), "true",
                       b.is_tfold_strong ? "true" : "false", b.is_tfold_strong);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::CapExceeded) throw;
            rep.status(std::to_string(k + 1) + "-fold strong blocking", "true", "not computed", std::nullopt,
                       e.what());
        }
    });

    auto* c_nine = construct->add_subcommand("nine-planes", "nine coordinate planes of PG(4,q)");
    c_nine->add_option("--q", q, "field order q'")->required();
    c_nine->add_option("-o,--out", out, "point set file");
    c_nine->add_flag("--skip-saturating", skip_sat, "do not check the 2-saturating image in PG(4,q^3)");
    bind(c_nine, [&](RunReport& rep) {
        const Field f = field_arg(q);
        const auto s = nine_planes_set(f);
        emit_points(rep, out, s);
        size_status(rep, s.size(), BigInt(9 * q * q - 8 * q + 4));
        if (!skip_sat) saturating_status(rep, lift(s, 3), 2, pg_name(4, q * q * q));
    });

    auto* c_baer = construct->add_subcommand("baer-pair", "two disjoint Baer subplanes of PG(2,q), q a square");
    c_baer->add_option("--q", q, "field order q' (a square)")->required();
    c_baer->add_option("-o,--out", out, "point set file");
    bind(c_baer, [&](RunReport& rep) {
        const auto s = baer_pair_set(q);
        emit_points(rep, out, s);
        const bool blk = verify_tfold_blocking(s, 2, 1);
        rep.status("2-fold blocking in " + pg_name(2, q), "true", blk ? "true" : "false", blk);
        saturating_status(rep, strong_to_saturating(s, 1), 1, pg_name(2, q * q));
    });

    std::uint32_t p = 0;
    auto* c_cubic = construct->add_subcommand("cubic-pair", "2-fold blocking set of PG(2,p^3)");
    c_cubic->add_option("--p", p, "prime")->required();
    c_cubic->add_option("-o,--out", out, "point set file");
    bind(c_cubic, [&](RunReport& rep) {
        const auto cp = cubic_blocking_pair(p);
        emit_points(rep, out, cp.set);
        rep.set("c", cp.c);
        rep.set("d", cp.d);
        const bool blk = verify_tfold_blocking(cp.set, 2, 1);
        rep.status("2-fold blocking in " + pg_name(2, cp.set.field().q()), "true", blk ? "true" : "false", blk);
    });

    unsigned m = 1, R2 = 1;
    auto* c_ham = construct->add_subcommand("hamming", "parity-check matrix of the q-ary Hamming code");
    c_ham->add_option("--q", q, "field order")->required();
    c_ham->add_option("--m", m, "codimension")->required();
    c_ham->add_option("-o,--out", out, "code file");
    bind(c_ham, [&](RunReport& rep) {
        const Code c(hamming_pcm(m, field_arg(q)));
        emit_code(rep, out, c);
        radius_status(rep, c, 1, true);
    });

    auto* c_sig = construct->add_subcommand("sigma", "direct sum of R2 Hamming codes");
    c_sig->add_option("--q", q, "field order")->required();
    c_sig->add_option("--m", m, "codimension of each block")->required();
    c_sig->add_option("--R2", R2, "number of blocks")->required();
    c_sig->add_option("-o,--out", out, "code file");
    bind(c_sig, [&](RunReport& rep) {
        const Code c(sigma_matrix(R2, m, field_arg(q)));
        emit_code(rep, out, c);
        radius_status(rep, c, int(R2), true);
    });

    std::vector<std::string> inputs;
    auto* c_ds = construct->add_subcommand("ds", "direct sum of code files");
    c_ds->add_option("--input", inputs, "code files")->required();
    c_ds->add_option("-o,--out", out, "code file");
    bind(c_ds, [&](RunReport& rep) {
        std::vector<Code> parts;
        int total = 0;
        for (const auto& path : inputs) {
            parts.push_back(input_code(rep, path));
            total += covering_radius(parts.back());
        }
        const Code c = direct_sum(parts);
        emit_code(rep, out, c);
        radius_status(rep, c, total, true);
    });

    std::string input;
    auto* c_dbl = construct->add_subcommand("doubling", "double a ternary radius-2 code");
    c_dbl->add_option("--input", input, "code file")->required();
    c_dbl->add_option("-o,--out", out, "code file");
    bind(c_dbl, [&](RunReport& rep) {
        const Code c0 = input_code(rep, input);
        const Code c = doubling(c0);
        emit_code(rep, out, c);
        rep.status("length", std::to_string(2 * c0.n()), std::to_string(c.n()), c.n() == 2 * c0.n());
        radius_status(rep, c, 2, true);
    });

    int variant = 1;
    std::optional<int> R_opt;
    int ell = 0;
    std::string partition_path, aux_path;
    bool find_partition = false;
    auto* c_qm = construct->add_subcommand("qm", "q^m-concatenation of a starting code");
    c_qm->add_option("--variant", variant, "1..8")->required();
    c_qm->add_option("--start", input, "starting code file")->required();
    c_qm->add_option("--m", m, "extension degree")->required();
    c_qm->add_option("--R", R_opt, "covering radius of the start (default: computed)");
    c_qm->add_option("--ell", ell, "ell of the partition (with --partition)");
    auto* part_opt = c_qm->add_option("--partition", partition_path, "partition file (default: singletons)");
    c_qm->add_flag("--find-partition", find_partition, "use a partition of maximal ell")->excludes(part_opt);
    c_qm->add_option("--aux", aux_path, "auxiliary code for QM4 and QM8");
    c_qm->add_option("-o,--out", out, "code file");
    bind(c_qm, [&](RunReport& rep) {
        const Code c0 = input_code(rep, input);
        const int R = R_opt ? *R_opt : covering_radius(c0);
        Partition part = Partition::trivial(c0.n());
        int ell0 = 0;
        if (!partition_path.empty()) {
            rep.input(partition_path);
            part = load_partition(partition_path);
            ell0 = ell;
            if (!verify_partition(c0, part, R, ell0))
                throw Error(ErrorKind::InvalidPartition, "not an (R,ell)-partition of the starting code");
        } else if (find_partition) {
            const auto best = find_max_ell(c0, R);
            if (!best) throw Error(ErrorKind::DomainViolation, "radius of the start exceeds R");
            part = best->partition;
            ell0 = best->ell;
        }
        std::optional<Matrix> aux;
        if (!aux_path.empty()) aux = input_code(rep, aux_path).H();
        const auto res = qm_construct(qm_from_int(variant), c0, part, R, ell0, m, aux);
        std::ostringstream prov;
        prov << qm_name(qm_from_int(variant)) << " m=" << m << " R=" << R << " ell0=" << ell0 << " indicators=";
        for (std::size_t i = 0; i < res.indicators.size(); ++i)
            prov << (i ? "," : "") << (res.indicators[i].star ? std::string("*") : std::to_string(res.indicators[i].value));
        emit_code(rep, out, res.code, prov.str());
        rep.set("provenance", prov.str());
        rep.status("length", std::to_string(res.formula_length), std::to_string(res.code.n()),
                   res.formula_length == res.code.n());
        if (res.radius)
            rep.status("covering radius", std::to_string(R), std::to_string(*res.radius), res.verified);
        else
            rep.status("covering radius", std::to_string(R), "not computed", std::nullopt, "q^r above the cap");
    });

    // ---------------------------------------------------------------- verify
    auto* verify = app.add_subcommand("verify", "recompute a property and compare it with a claim");
    verify->require_subcommand(1);
    int claim = 0;
    auto* v_rad = verify->add_subcommand("radius", "covering radius of a code");
    v_rad->add_option("--code", input, "code file")->required();
    v_rad->add_option("--claim", claim, "claimed radius")->required();
    bind(v_rad, [&](RunReport& rep) { radius_status(rep, input_code(rep, input), claim, false); });

    auto* v_sat = verify->add_subcommand("saturating", "smallest rho for which a point set saturates");
    v_sat->add_option("--points", input, "point set file")->required();
    v_sat->add_option("--claim", claim, "claimed rho")->required();
    bind(v_sat, [&](RunReport& rep) {
        const auto s = input_points(rep, input);
        const auto r = verify_saturating(s, claim);
        rep.status("smallest rho", std::to_string(claim), opt_str(r.smallest_rho), r.matches_claim());
    });

    std::optional<int> sub_dim;
    auto* v_blk = verify->add_subcommand("blocking", "t-fold strong blocking, or t-fold blocking of subspaces");
    v_blk->add_option("--points", input, "point set file")->required();
    v_blk->add_option("--t", claim, "t")->required();
    v_blk->add_option("--dim", sub_dim, "projective dimension of the subspaces (plain t-fold blocking)");
    bind(v_blk, [&](RunReport& rep) {
        const auto s = input_points(rep, input);
        if (sub_dim) {
            const bool ok = verify_tfold_blocking(s, claim, *sub_dim);
            rep.status(std::to_string(claim) + "-fold blocking of dimension " + std::to_string(*sub_dim) + " spaces",
                       "true", ok ? "true" : "false", ok);
        } else {
            const auto b = verify_strong_blocking(s, claim);
            rep.set("subspaces_checked", b.subspaces_checked);
            rep.status(std::to_string(claim) + "-fold strong blocking", "true", b.is_tfold_strong ? "true" : "false",
                       b.is_tfold_strong);
        }
    });

    int R = 0;
    auto* v_part = verify->add_subcommand("partition", "(R,ell)-partition of a code");
    v_part->add_option("--code", input, "code file")->required();
    v_part->add_option("--partition", partition_path, "partition file")->required();
    v_part->add_option("--R", R, "covering radius")->required();
    v_part->add_option("--ell", ell, "ell")->required();
    bind(v_part, [&](RunReport& rep) {
        const Code c = input_code(rep, input);
        rep.input(partition_path);
        const Partition pt = load_partition(partition_path);
        const bool ok = verify_partition(c, pt, R, ell);
        rep.status("(" + std::to_string(R) + "," + std::to_string(ell) + ")-partition", "true", ok ? "true" : "false",
                   ok);
    });

    // -------------------------------------------------------------- families
    auto* fam = app.add_subcommand("families", "covering code families and their lengths");
    fam->require_subcommand(1);
    std::optional<std::uint64_t> q_opt;
    std::string id;
    unsigned r = 0;
    R = 2;
    auto ctx_store = [&g]() { return TableStore::load(g.data_dir); };

    auto* f_list = fam->add_subcommand("list", "catalog for one covering radius");
    f_list->add_option("--R", R, "covering radius")->required();
    f_list->add_option("--q", q_opt, "only families admitting this q");
    bind(f_list, [&](RunReport& rep) {
        const TableStore t = ctx_store();
        const FamilyContext ctx(t);
        const auto ds = q_opt ? list_families(R, *q_opt, ctx) : catalog(R);
        json rows = json::array();
        std::ostringstream csv;
        csv << "id,R,gamma,infinite,q_domain,r_domain\n";
        for (const auto& d : ds) {
            rows.push_back({{"id", d.id}, {"R", d.R}, {"gamma", d.gamma}, {"infinite", d.infinite},
                            {"q_domain", d.q_domain}, {"r_domain", d.r_domain}, {"origin", d.origin}});
            csv << d.id << ',' << d.R << ',' << d.gamma << ',' << d.infinite << ",\"" << d.q_domain << "\",\""
                << d.r_domain << "\"\n";
        }
        rep.set("catalog_version", 1);
        rep.set("families", rows);
        rep.csv = csv.str();
    });

    auto* f_eval = fam->add_subcommand("eval", "length and density bound of one family member");
    f_eval->add_option("--id", id, "family id")->required();
    f_eval->add_option("--R", R, "covering radius")->required();
    f_eval->add_option("--q", q, "field order")->required();
    f_eval->add_option("--r", r, "codimension")->required();
    bind(f_eval, [&](RunReport& rep) {
        const TableStore t = ctx_store();
        const FamilyContext ctx(t);
        const auto& d = find_family(id, R);
        if (auto why = domain_error(d, q, r, ctx)) throw Error(ErrorKind::DomainViolation, *why);
        const auto len = family_length(d, q, r, ctx);
        const auto dens = family_density_bound(d, q, ctx);
        rep.set("length", str(len.length));
        rep.set("length_width", str(len.width));
        rep.set("leading_coefficient", leading_coefficient(d, q, ctx).str());
        rep.set("density_bound", dens.value.str());
        rep.set("density_bound_decimal", decimal(dens.value.round_to(6), 6));
        rep.set("density_bound_stated", dens.stated);
        std::ostringstream csv;
        csv << "id,R,q,r,length,width,density_bound\n"
            << id << ',' << R << ',' << q << ',' << r << ',' << len.length << ',' << len.width << ','
            << decimal(dens.value.round_to(6), 6) << '\n';
        rep.csv = csv.str();
    });

    bool no_verify = false;
    auto* f_check = fam->add_subcommand("check", "build a family member and compare with the formula");
    f_check->add_option("--id", id, "family id")->required();
    f_check->add_option("--R", R, "covering radius")->required();
    f_check->add_option("--q", q, "field order")->required();
    f_check->add_flag("--no-verify", no_verify, "skip the covering radius computation");
    bind(f_check, [&](RunReport& rep) {
        const TableStore t = ctx_store();
        const FamilyContext ctx(t);
        const auto c = cross_check_family(find_family(id, R), q, ctx, !no_verify);
        rep.set("r", c.r);
        if (c.status == "NOT_CONSTRUCTIBLE") throw Error(ErrorKind::NotConstructible, c.detail);
        rep.status("length", str(c.formula), c.constructed ? str(*c.constructed) : "none", c.status == "MATCH",
                   c.detail);
        if (c.radius_ok) rep.status("covering radius", "family radius", *c.radius_ok ? "equal" : "different",
                                    *c.radius_ok);
    });

    auto* f_open = fam->add_subcommand("open-problem", "does every residue of r mod R have an infinite family");
    f_open->add_option("--R", R, "covering radius")->required();
    f_open->add_option("--q", q, "field order")->required();
    bind(f_open, [&](RunReport& rep) {
        const TableStore t = ctx_store();
        const FamilyContext ctx(t);
        const auto o = open_problem_one_check(R, q, ctx);
        json by = json::array();
        std::ostringstream csv;
        csv << "gamma,families\n";
        for (std::size_t gm = 0; gm < o.by_gamma.size(); ++gm) {
            by.push_back(o.by_gamma[gm]);
            csv << gm << ',';
            for (std::size_t i = 0; i < o.by_gamma[gm].size(); ++i) csv << (i ? " " : "") << o.by_gamma[gm][i];
            csv << '\n';
        }
        rep.set("by_gamma", by);
        rep.csv = csv.str();
        rep.status("every residue covered", "true", o.covered ? "true" : "false", o.covered);
    });

    // ---------------------------------------------------------------- tables
    auto* tables = app.add_subcommand("tables", "reproduce stored tables and bound checks");
    tables->require_subcommand(1);
    std::string table, quantity;
    std::optional<std::uint64_t> qmax, upper_max;
    unsigned rmax = 12;
    auto* t_rep = tables->add_subcommand("reproduce", "recompute a stored table");
    t_rep->add_option("--table", table, "I, III, IV, V or VI")->required();
    t_rep->add_option("--qmax", qmax, "largest q settled by exhaustive search");
    t_rep->add_option("--upper-max", upper_max, "largest q given a greedy upper bound");
    t_rep->add_option("--rmax", rmax, "largest r for Table V");
    bind(t_rep, [&](RunReport& rep) {
        const TableStore t = ctx_store();
        std::optional<TableRange> range;
        if (qmax || upper_max) {
            // --qmax alone means exhaustive search only, up to that q
            TableRange d = default_table_range(table);
            if (qmax) d.exact_max = d.upper_max = *qmax;
            if (upper_max) d.upper_max = *upper_max;
            range = d;
        }
        const auto rows = table_reproduce(table, t, range, rmax, g.search());
        json js = json::array();
        std::ostringstream csv;
        csv << "table,q,r,gamma,stored,computed,status,detail\n";
        bool mismatch = false, budget = false;
        for (const auto& x : rows) {
            js.push_back({{"q", x.q}, {"r", x.r}, {"gamma", x.gamma}, {"stored", x.stored}, {"computed", x.computed},
                          {"status", x.status}, {"detail", x.detail}});
            csv << x.table << ',' << x.q << ',' << x.r << ',' << x.gamma << ',' << x.stored << ',' << x.computed
                << ',' << x.status << ",\"" << x.detail << "\"\n";
            mismatch |= x.status == "MISMATCH";
            budget |= x.status == "BUDGET_EXCEEDED";
        }
        rep.set("rows", js);
        rep.csv = csv.str();
        if (mismatch) rep.exit = kMismatch;
        else if (budget) rep.exit = kCap;
    });

    auto* t_bnd = tables->add_subcommand("bounds", "threshold claims on normalized table values");
    t_bnd->add_option("--quantity", quantity, "a, b or c")->required()->check(CLI::IsMember({"a", "b", "c"}));
    bind(t_bnd, [&](RunReport& rep) {
        const TableStore t = ctx_store();
        const auto b = bound_check(quantity, t);
        rep.set("quantity", b.quantity);
        json cl = json::array();
        std::ostringstream csv;
        csv << "threshold,q_max,holds,worst_q,worst_value,failing_q\n";
        for (const auto& c : b.clauses) {
            const std::string thr = decimal(c.threshold, 1);
            std::string failing;
            for (auto x : c.failing_q) failing += (failing.empty() ? "" : " ") + std::to_string(x);
            cl.push_back({{"threshold", thr}, {"q_max", c.q_max}, {"holds", c.holds}, {"worst_q", c.worst_q},
                          {"worst_value", c.worst_value}, {"failing_q", c.failing_q}});
            csv << thr << ',' << c.q_max << ',' << c.holds << ',' << c.worst_q << ',' << c.worst_value << ','
                << failing << '\n';
            rep.status(b.quantity + " < " + thr + " for q <= " + std::to_string(c.q_max), "true",
                       c.holds ? "true" : "false", c.holds, failing.empty() ? "" : "fails at q = " + failing);
        }
        rep.set("clauses", cl);
        rep.csv = csv.str();
    });

    // ---------------------------------------------------------------- search
    auto* search = app.add_subcommand("search", "smallest saturating sets");
    search->require_subcommand(1);
    int rho = 1;
    std::size_t nmax = 0;
    std::string seed = "basis";
    auto* s_ex = search->add_subcommand("exhaustive", "smallest rho-saturating set, proven minimal");
    s_ex->add_option("--v", v, "dimension")->required();
    s_ex->add_option("--q", q, "field order")->required();
    s_ex->add_option("--rho", rho, "rho")->required();
    s_ex->add_option("--nmax", nmax, "largest size tried")->required();
    s_ex->add_option("-o,--out", out, "witness point set file");
    bind(s_ex, [&](RunReport& rep) {
        const auto res = exhaustive_min_saturating(v, field_arg(q), rho, nmax, g.search());
        emit_points(rep, out, res.witness);
        rep.set("n_min", res.n_min);
        rep.set("leaves", res.leaves);
        rep.set("search_seconds", res.seconds);
        saturating_status(rep, res.witness, rho, pg_name(v, q));
    });

    auto* s_gr = search->add_subcommand("greedy", "greedy rho-saturating set (an upper bound)");
    s_gr->add_option("--v", v, "dimension")->required();
    s_gr->add_option("--q", q, "field order")->required();
    s_gr->add_option("--rho", rho, "rho")->required();
    s_gr->add_option("--seed", seed, "basis or empty")->check(CLI::IsMember({"basis", "empty"}));
    s_gr->add_option("-o,--out", out, "point set file");
    bind(s_gr, [&](RunReport& rep) {
        const auto s = greedy_saturating(v, field_arg(q), rho, seed == "empty" ? GreedySeed::Empty : GreedySeed::Basis);
        emit_points(rep, out, s);
        rep.set("size", s.size());
        saturating_status(rep, s, rho, pg_name(v, q));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kPrecondition;
    }

    RunReport rep;
    std::string cmd;
    for (int i = 1; i < argc; ++i) cmd += (i > 1 ? " " : "") + std::string(argv[i]);
    rep.set("command", cmd);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        action(rep);
    } catch (const Error& e) {
        rep.set("error", {{"kind", error_kind_name(e.kind())}, {"message", e.what()}});
        rep.exit = exit_for(e.kind());
    } catch (const std::exception& e) {
        rep.set("error", {{"kind", "Internal"}, {"message", e.what()}});
        rep.exit = kPrecondition;
    }
    rep.set("seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    rep.set("exit_code", rep.exit);

    if (g.as_json) {
        std::cout << rep.j.dump(2) << '\n';
    } else {
        if (rep.j.contains("error")) std::cerr << "error: " << rep.j["error"]["message"].get<std::string>() << '\n';
        for (const auto& o : rep.j["outputs"]) {
            if (o.contains("inline")) std::cout << o["inline"].get<std::string>();
            else std::cout << "wrote " << o["path"].get<std::string>() << " (" << o["digest"].get<std::string>() << ")\n";
        }
        std::cout << rep.csv;
        for (const auto& s : rep.j["statuses"]) {
            std::cout << s["status"].get<std::string>() << "  " << s["check"].get<std::string>() << ": claimed "
                      << s["claimed"].get<std::string>() << ", computed " << s["computed"].get<std::string>();
            if (s.contains("detail")) std::cout << " (" << s["detail"].get<std::string>() << ")";
            std::cout << '\n';
        }
        for (const char* key : {"n_min", "size", "length"})
            if (rep.j.contains(key)) std::cout << key << ": " << rep.j[key].dump() << '\n';
    }
    return rep.exit;
}
