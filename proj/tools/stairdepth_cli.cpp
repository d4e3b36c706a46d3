#include "stairdepth/serialize.hpp"
#include "stairdepth/stair_flats.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

using namespace stairdepth;

namespace {

Point parse_point(const std::vector<std::string>& raw) {
    Point p;
    for (const auto& s : raw) p.push_back(rat_from_string(s));
    return p;
}

int run_grid(int d, int m, const std::string& emit) {
    GridParams params = GridParams::make(d, m);
    auto indices = all_grid_indices(params);
    if (emit == "csv") {
        for (int i = 1; i <= d; ++i) std::cout << "e_" << i << (i < d ? "," : "");
        for (int i = 1; i <= d; ++i) std::cout << ",x_" << i;
        std::cout << "\n";
        for (const auto& idx : indices) {
            Point p = grid_point(params, idx);
            for (int i = 0; i < d; ++i) std::cout << idx[i] << (i + 1 < d ? "," : "");
            for (int i = 0; i < d; ++i) std::cout << "," << rat_to_string(p[i]);
            std::cout << "\n";
        }
        return 0;
    }
    json pj{{"type", "params"}, {"d", d}, {"m", m}, {"n", params.n()}};
    json ks = json::array();
    for (const auto& K : params.K) ks.push_back(K.str());
    pj["K"] = ks;
    std::cout << pj.dump() << "\n";
    for (const auto& idx : indices) {
        json rec{{"type", "grid_point"}, {"index", idx}, {"point", to_json(grid_point(params, idx))}};
        std::cout << rec.dump() << "\n";
    }
    return 0;
}

int emit_family(const CoveringFamily& fam, bool verify) {
    json out{{"type", "family"}, {"family", to_json(fam)}};
    int rc = 0;
    if (verify) {
        FamilyCertificate cert = check_family(fam);
        out["certificate"] = to_json(cert);
        if (!cert.pass) rc = 1;
    }
    std::cout << out.dump() << "\n";
    return rc;
}

int run_depth(bool is_flat, const std::string& set_file, const std::vector<std::string>& query,
              const std::vector<std::string>& dirs) {
    std::ifstream in(set_file);
    if (!in) {
        std::cerr << "cannot open point set file: " << set_file << "\n";
        return 2;
    }
    json j;
    in >> j;
    std::vector<Point> S = point_set_from_json(j);
    Point q = parse_point(query);
    DepthResult r;
    if (!is_flat) {
        r = tukey_depth_witness(S, q);
    } else {
        const int d = dim_of(q);
        if (dirs.empty() || dirs.size() % d != 0)
            throw CLI::ValidationError("--dir must hold k*d rational values");
        AffineFlat f{q, {}};
        for (std::size_t i = 0; i < dirs.size(); i += d) {
            Vec v;
            for (int c = 0; c < d; ++c) v.push_back(rat_from_string(dirs[i + c]));
            f.directions.push_back(std::move(v));
        }
        r = flat_depth_witness(S, f);
    }
    json out{{"type", "depth"},
             {"depth", r.depth},
             {"witness", to_json(r.witness)},
             {"count", halfspace_count(S, r.witness)}};
    std::cout << out.dump() << "\n";
    return 0;
}

int run_theorem1(int d, int m, const std::string& mode, int count, std::uint64_t seed,
                 bool with_depth, bool csv) {
    GridParams params = GridParams::make(d, m);
    std::vector<AffineFlat> lines =
        (mode == "pairs") ? lines_through_grid_pairs(params) : random_lines(params, count, seed);
    SweepReport report = line_depth_sweep(params, lines, with_depth);
    int rc = 0;
    if (csv) {
        std::cout << "index,trivial,count_h2,count_h3,depth\n";
        for (std::size_t i = 0; i < report.rows.size(); ++i) {
            const auto& row = report.rows[i];
            std::cout << i << "," << row.trivial << "," << row.count_h2 << "," << row.count_h3
                      << "," << row.depth << "\n";
        }
    } else {
        for (std::size_t i = 0; i < report.rows.size(); ++i) {
            const auto& row = report.rows[i];
            json rec{{"type", "line"},       {"index", i},
                     {"line", to_json(row.line)}, {"trivial", row.trivial},
                     {"count_h2", row.count_h2},  {"count_h3", row.count_h3}};
            if (with_depth) rec["depth"] = row.depth;
            std::cout << rec.dump() << "\n";
        }
    }
    Rat bound = slack_bound(params);
    for (const auto& row : report.rows) {
        if (row.trivial) continue;
        if (row.count_h3 > row.count_h2 || Rat(row.count_h2, params.n()) > bound) rc = 1;
        if (with_depth && row.depth > row.count_h3) rc = 1;
    }
    json summary{{"type", "summary"},
                 {"n", params.n()},
                 {"lines", report.rows.size()},
                 {"max_count_ratio", rat_to_string(report.max_count_ratio)},
                 {"slack_bound", rat_to_string(bound)},
                 {"pass", rc == 0}};
    if (with_depth) summary["max_depth"] = report.max_depth;
    if (!csv) std::cout << summary.dump() << "\n";
    return rc;
}

bool report_check(const std::string& suite, const std::string& name, bool pass) {
    json rec{{"type", "check"}, {"suite", suite}, {"check", name}, {"pass", pass}};
    std::cout << rec.dump() << "\n";
    return pass;
}

bool suite_cover() {
    bool ok = true;
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> num(0, 24);
    for (int d = 2; d <= 5; ++d) {
        bool pass = true;
        for (int rep = 0; rep < 10 && pass; ++rep) {
            Point p(d), q(d);
            for (int i = 0; i < d; ++i) {
                p[i] = Rat(num(rng), 24);
                q[i] = Rat(num(rng), 24);
            }
            CoveringFamily fam = cover_pair(p, q);
            pass = fam.members.size() == static_cast<std::size_t>((d - 1) * (d + 2) / 2) &&
                   fam.delta == d - 1 && check_family(fam).pass;
            if (pass) {
                Rat total = 0;
                for (const auto& H : fam.members) total += volume_in_unit_cube(H);
                pass = total == d - 1;
            }
        }
        ok &= report_check("cover", "random pair families d=" + std::to_string(d), pass);
    }
    return ok;
}

bool suite_lemma4() {
    bool ok = true;
    GridParams params = GridParams::make(2, 4);
    auto grid = all_grid_points(params);
    bool pass = true;
    for (int e1 = 1; e1 <= 3 && pass; ++e1)
        for (int e2 = 1; e2 <= 3 && pass; ++e2) {
            Point a = grid_point(params, {e1, e2});
            for (std::uint32_t mask = 1; mask < 7u && pass; ++mask) {
                IndexSet I(2, mask);
                StairHalfspace H(a, I);
                EuclideanHalfspace g = lemma4_halfspace(a, I);
                for (const auto& x : grid) {
                    if (!c_far(params, a, x, Rat(1))) continue;
                    if (shs_contains(H, x) != g.contains(x)) {
                        pass = false;
                        break;
                    }
                }
            }
        }
    ok &= report_check("lemma4", "exhaustive agreement d=2 m=4", pass);
    return ok;
}

bool suite_lemma1() {
    bool ok = true;
    for (int d = 2; d <= 3; ++d) {
        for (int m = 2; m <= 4; ++m) {
            GridParams params = GridParams::make(d, m);
            auto indices = all_grid_indices(params);
            bool pass = true;
            for (const auto& a : indices) {
                if (a[d - 1] != 0) continue;
                for (const auto& b : indices) {
                    if (b[d - 1] < 1) continue;
                    if (!lemma1_check(params, a, b)) {
                        pass = false;
                        break;
                    }
                }
                if (!pass) break;
            }
            ok &= report_check(
                "lemma1", "exhaustive d=" + std::to_string(d) + " m=" + std::to_string(m), pass);
        }
    }
    return ok;
}

bool suite_depth() {
    bool ok = true;
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> num(-10, 10);
    auto random_set = [&](int d, int n) {
        std::vector<Point> S;
        for (int i = 0; i < n; ++i) {
            Point p(d);
            for (int j = 0; j < d; ++j) p[j] = Rat(num(rng), 2);
            S.push_back(p);
        }
        return S;
    };
    bool pass = true;
    for (int it = 0; it < 100 && pass; ++it) {
        auto S = random_set(2, 3 + it % 20);
        Point x = random_set(2, 1)[0];
        pass = tukey_depth(S, x) == tukey_depth_sweep2d(S, x);
    }
    ok &= report_check("depth", "2d sweep cross-validation", pass);

    pass = true;
    for (auto [d, cs] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}}) {
        auto cloud = cloud_set(d, cs, Rat(1, 8));
        long long maxd = 0;
        for (const auto& q : cloud) maxd = std::max(maxd, tukey_depth(cloud, q));
        pass = pass && maxd == cs;
    }
    ok &= report_check("depth", "cloud tightness", pass);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact stretched-grid / stair-convexity toolkit"};
    app.require_subcommand(1);

    // grid
    auto* grid = app.add_subcommand("grid", "Emit all stretched-grid points");
    int gd = 2, gm = 3;
    std::string emit = "json";
    grid->add_option("--d", gd, "dimension")->required();
    grid->add_option("--m", gm, "points per axis")->required();
    grid->add_option("--emit", emit)->check(CLI::IsMember({"json", "csv"}));

    // cover
    auto* cover = app.add_subcommand("cover", "Two-point covering family");
    int cd = 2;
    std::vector<std::string> praw, qraw;
    bool cverify = false;
    cover->add_option("--d", cd, "dimension")->required();
    cover->add_option("--p", praw, "first anchor (d rationals)")->required()->expected(-1);
    cover->add_option("--q", qraw, "second anchor (d rationals)")->required()->expected(-1);
    cover->add_flag("--verify", cverify, "run the exact cover certificate");

    // coverflat
    auto* coverflat = app.add_subcommand("coverflat", "Generalized covering family of a stair-flat");
    std::string fixture;
    bool cfrandom = false, cfverify = false;
    int cfd = 3, cfk = 1;
    std::uint64_t cfseed = 1;
    coverflat->add_option("--fixture", fixture)->check(CLI::IsMember({"fig6", "fig7", "fig8", "fig9"}));
    coverflat->add_flag("--random", cfrandom, "random diagonal stair-flat");
    coverflat->add_option("--d", cfd, "ambient dimension");
    coverflat->add_option("--k", cfk, "flat order");
    coverflat->add_option("--seed", cfseed, "rng seed");
    coverflat->add_flag("--verify", cfverify, "run the exact cover certificate");

    // depth
    auto* depth = app.add_subcommand("depth", "Exact depth oracle");
    depth->require_subcommand(1);
    auto* dpoint = depth->add_subcommand("point", "Tukey depth of a point");
    auto* dflat = depth->add_subcommand("flat", "Depth of an affine flat");
    std::string set_file;
    std::vector<std::string> query, dirs;
    for (auto* sub : {dpoint, dflat}) {
        sub->add_option("--set", set_file, "JSON point-set file")->required();
        sub->add_option("--query", query, "query point / flat base (d rationals)")
            ->required()
            ->expected(-1);
    }
    dflat->add_option("--dir", dirs, "flat directions, k groups of d rationals")
        ->required()
        ->expected(-1);

    // theorem1
    auto* thm = app.add_subcommand("theorem1", "Shallow halfspace pipeline sweep");
    int td = 3, tm = 3, tcount = 100;
    std::uint64_t tseed = 1;
    std::string tlines = "random";
    bool tdepth = false, tcsv = false;
    thm->add_option("--d", td, "dimension")->required();
    thm->add_option("--m", tm, "points per axis")->required();
    thm->add_option("--lines", tlines)->check(CLI::IsMember({"pairs", "random"}));
    thm->add_option("--count", tcount, "number of random lines");
    thm->add_option("--seed", tseed, "rng seed");
    thm->add_flag("--depth", tdepth, "also compute the exact flat depth per line");
    thm->add_flag("--csv", tcsv, "flattened CSV table");

    // verify
    auto* verify = app.add_subcommand("verify", "Built-in assertion suites");
    std::string suite = "all";
    verify->add_option("--suite", suite)
        ->check(CLI::IsMember({"all", "cover", "lemma4", "lemma1", "depth"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (grid->parsed()) return run_grid(gd, gm, emit);
        if (cover->parsed()) {
            Point p = parse_point(praw), q = parse_point(qraw);
            if (dim_of(p) != cd || dim_of(q) != cd)
                throw CLI::ValidationError("--p/--q must hold d rationals");
            return emit_family(cover_pair(p, q), cverify);
        }
        if (coverflat->parsed()) {
            std::shared_ptr<const StairFlat> f;
            if (cfrandom) {
                std::mt19937 rng(static_cast<std::uint32_t>(cfseed));
                f = gen_flat(cfk, cfd, rng).flat;
            } else if (fixture == "fig6") {
                f = fig6_flat();
            } else if (fixture == "fig7") {
                f = fig7_flat();
            } else if (fixture == "fig8") {
                f = fig8_flat();
            } else if (fixture == "fig9") {
                f = fig9_flat();
            } else {
                throw CLI::ValidationError("coverflat needs --fixture or --random");
            }
            return emit_family(cover_flat(*f), cfverify);
        }
        if (depth->parsed()) return run_depth(dflat->parsed(), set_file, query, dirs);
        if (thm->parsed()) return run_theorem1(td, tm, tlines, tcount, tseed, tdepth, tcsv);
        if (verify->parsed()) {
            bool ok = true;
            if (suite == "all" || suite == "cover") ok &= suite_cover();
            if (suite == "all" || suite == "lemma4") ok &= suite_lemma4();
            if (suite == "all" || suite == "lemma1") ok &= suite_lemma1();
            if (suite == "all" || suite == "depth") ok &= suite_depth();
            return ok ? 0 : 1;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
