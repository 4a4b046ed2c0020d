#include "indcat/verify.hpp"

#include <catch_amalgamated.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

using indcat::CaterpillarSpec;
using indcat::ConformanceRecord;
using indcat::Dom;
using indcat::Json;
using indcat::Polynomial;
using indcat::Verdict;

namespace {

// Sums of centered rectangles: symmetric by construction, nondecreasing to
// the middle, degree exactly t.
Polynomial random_symmetric_unimodal(std::uint64_t seed, int t) {
    indcat::SplitMix64 rng(seed);
    std::vector<indcat::BigInt> c(static_cast<std::size_t>(t) + 1, indcat::BigInt(0));
    bool used = false;
    for (int i = 0; i <= t / 2; ++i) {
        std::uint64_t w = rng.next() % 4;
        if (i == t / 2 && !used && w == 0) w = 1;
        if (w) {
            used = true;
            for (int p = i; p <= t - i; ++p) c[static_cast<std::size_t>(p)] += w;
        }
    }
    if (c[0] == 0)
        for (auto& v : c) v += 1;
    return Polynomial(c);
}

int count_failed_entries(const ConformanceRecord& rec, bool& all_failures_exempt) {
    int failed = 0;
    all_failures_exempt = true;
    for (const auto& e : rec.observed.at("inequalities")) {
        if (!e.at("holds").get<bool>()) {
            ++failed;
            if (e.at("counted").get<bool>()) all_failures_exempt = false;
        }
    }
    return failed;
}

}  // namespace

TEST_CASE("verdict helpers") {
    CHECK(indcat::verdict_name(Verdict::conform) == "conform");
    CHECK(indcat::verdict_name(Verdict::nonconform) == "nonconform");
    CHECK(indcat::verdict_name(Verdict::hypothesis_not_met) == "hypothesis-not-met");
    CHECK(indcat::worst_of(Verdict::conform, Verdict::hypothesis_not_met) ==
          Verdict::hypothesis_not_met);
    CHECK(indcat::worst_of(Verdict::hypothesis_not_met, Verdict::nonconform) ==
          Verdict::nonconform);
}

TEST_CASE("shift on a strict left-dominant input") {
    ConformanceRecord rec = indcat::check_shift_lemma(Polynomial{1, 6, 7, 4, 1}, 2);
    CHECK(rec.verdict == Verdict::conform);
    CHECK(rec.observed.at("product") ==
          Json::array({"1", "8", "20", "24", "16", "6", "1"}));
    CHECK(rec.observed.at("product_shape").at("modes") == Json::array({3}));
    REQUIRE(rec.predicted.at("claims").size() == 1);
    CHECK(rec.predicted.at("claims")[0].at("target_class") == "strict-LD");
    CHECK(rec.predicted.at("claims")[0].at("mode") == 3);
}

TEST_CASE("odd shift swaps the side") {
    ConformanceRecord rec = indcat::check_shift_lemma(Polynomial{1, 3, 2}, 1);
    CHECK(rec.verdict == Verdict::conform);
    CHECK(rec.observed.at("product") == Json::array({"1", "4", "5", "2"}));
    REQUIRE(rec.predicted.at("claims").size() == 1);
    CHECK(rec.predicted.at("claims")[0].at("source_side") == "RD");
    CHECK(rec.predicted.at("claims")[0].at("target_class") == "strict-LD");
    CHECK(rec.predicted.at("claims")[0].at("mode") == 2);
}

TEST_CASE("symmetric input with odd shift breaks strict unimodality") {
    ConformanceRecord rec = indcat::check_shift_lemma(Polynomial{1, 3, 1}, 1);
    CHECK(rec.verdict == Verdict::nonconform);
    CHECK(rec.observed.at("product") == Json::array({"1", "4", "4", "1"}));
    CHECK(rec.observed.at("product_shape").at("modes") == Json::array({1, 2}));
}

TEST_CASE("shift hypotheses are gated") {
    ConformanceRecord tied =
        indcat::check_shift_lemma(Polynomial{1, 9, 22, 35, 35, 21, 7, 1}, 2);
    CHECK(tied.verdict == Verdict::hypothesis_not_met);
    CHECK(tied.observed.at("hypothesis_failures")[0] == "q not strictly unimodal");

    ConformanceRecord big_t = indcat::check_shift_lemma(Polynomial{1, 6, 7, 4, 1}, 3);
    CHECK(big_t.verdict == Verdict::hypothesis_not_met);
    CHECK(big_t.observed.at("hypothesis_failures")[0] == "t exceeds mode");

    Polynomial unbal = indcat::gen_dominant_poly(5, Dom::strict_ld, 8, false);
    ConformanceRecord ub = indcat::check_shift_lemma(unbal, 1);
    CHECK(ub.verdict == Verdict::hypothesis_not_met);

    CHECK_THROWS_AS(indcat::check_shift_lemma(Polynomial{1, 6, 7, 4, 1}, 0),
                    std::invalid_argument);
}

TEST_CASE("difference bounds on the small fixture") {
    ConformanceRecord rec = indcat::check_diff_bounds(Polynomial{1, 6, 7, 4, 1}, 2);
    CHECK(rec.verdict == Verdict::conform);
    CHECK(rec.observed.at("nu") == 3);
    CHECK(rec.observed.at("nu_in_expected_window") == true);
    CHECK(rec.observed.at("exempt_failures") == 0);
    bool simple_found = false;
    for (const auto& e : rec.observed.at("inequalities"))
        if (e.at("part") == 2 && e.at("k") == 3 && e.at("kind") == "simple") {
            simple_found = true;
            CHECK(e.at("lhs") == "8");
            CHECK(e.at("rhs") == "3");
            CHECK(e.at("holds") == true);
        }
    CHECK(simple_found);
}

TEST_CASE("difference bounds on the wide fixture") {
    Polynomial q{1, 11, 41, 94, 136, 131, 85, 36, 9, 1};
    ConformanceRecord rec = indcat::check_diff_bounds(q, 3);
    CHECK(rec.verdict == Verdict::conform);
    CHECK(rec.observed.at("nu") == 6);
    CHECK(rec.observed.at("exempt_failures") == 0);
    bool found = false;
    for (const auto& e : rec.observed.at("inequalities"))
        if (e.at("part") == 1 && e.at("k") == 5 && e.at("kind") == "simple") {
            found = true;
            CHECK(e.at("lhs") == "118");
            CHECK(e.at("rhs") == "49");
            CHECK(e.at("holds") == true);
        }
    CHECK(found);
}

TEST_CASE("unbacked edge failures are reported but exempt") {
    ConformanceRecord rec = indcat::check_diff_bounds(Polynomial{6, 15, 20, 18, 11, 2}, 2);
    CHECK(rec.verdict == Verdict::conform);
    CHECK(rec.observed.at("exempt_failures") == 1);
    bool all_exempt = false;
    CHECK(count_failed_entries(rec, all_exempt) == 1);
    CHECK(all_exempt);
    for (const auto& e : rec.observed.at("inequalities"))
        if (!e.at("holds").get<bool>()) {
            CHECK(e.at("part") == 2);
            CHECK(e.at("k") == rec.observed.at("nu"));
            CHECK(e.at("edge") == true);
            CHECK(e.at("counted") == false);
        }
}

TEST_CASE("seeded product suite conforms") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        indcat::LemmaPair pair = indcat::make_suite_pair(seed);
        ConformanceRecord shift = indcat::check_shift_lemma(pair.q, pair.t, seed);
        ConformanceRecord diff = indcat::check_diff_bounds(pair.q, pair.t, seed);
        CAPTURE(seed, pair.q.coeffs(), pair.t);
        CHECK(shift.verdict == Verdict::conform);
        CHECK(diff.verdict == Verdict::conform);
        bool all_exempt = false;
        count_failed_entries(diff, all_exempt);
        CHECK(all_exempt);
    }
}

TEST_CASE("conforming shift with expected mode keeps diff bounds out of nonconform") {
    for (std::uint64_t seed = 500; seed <= 560; ++seed) {
        indcat::LemmaPair pair = indcat::make_suite_pair(seed);
        ConformanceRecord shift = indcat::check_shift_lemma(pair.q, pair.t, seed);
        ConformanceRecord diff = indcat::check_diff_bounds(pair.q, pair.t, seed);
        if (shift.verdict == Verdict::conform &&
            diff.observed.at("nu_in_expected_window").get<bool>())
            CHECK(diff.verdict != Verdict::nonconform);
    }
}

TEST_CASE("records serialize reproducibly") {
    indcat::LemmaPair pair = indcat::make_suite_pair(42);
    std::string a = indcat::to_json(indcat::check_shift_lemma(pair.q, pair.t, 42)).dump();
    std::string b = indcat::to_json(indcat::check_shift_lemma(pair.q, pair.t, 42)).dump();
    CHECK(a == b);
    CHECK(indcat::make_suite_pair(42).q == pair.q);
}

TEST_CASE("symmetric multiplier behaves like an even binomial shift") {
    ConformanceRecord rec =
        indcat::check_symmetric_multiplier(Polynomial{1, 6, 7, 4, 1}, Polynomial{1, 2, 1});
    CHECK(rec.verdict == Verdict::conform);
    CHECK(rec.observed.at("claim1_holds") == true);
    CHECK(rec.predicted.at("claim1").at("mode") == 3);
    CHECK_FALSE(rec.observed.contains("claim2_holds"));
}

TEST_CASE("symmetric times symmetric stays symmetric unimodal") {
    ConformanceRecord rec =
        indcat::check_symmetric_multiplier(Polynomial{1, 2, 2, 1}, Polynomial{1, 2, 1});
    CHECK(rec.verdict == Verdict::conform);
    CHECK(rec.observed.at("claim2_holds") == true);
    CHECK_FALSE(rec.observed.contains("claim1_holds"));
    CHECK(rec.observed.at("product") == Json::array({"1", "4", "7", "7", "4", "1"}));

    ConformanceRecord both =
        indcat::check_symmetric_multiplier(Polynomial{1, 3, 1}, Polynomial{5});
    CHECK(both.verdict == Verdict::conform);
    CHECK(both.observed.at("claim1_holds") == true);
    CHECK(both.observed.at("claim2_holds") == true);
}

TEST_CASE("weak-sided input defeats the strict product claim") {
    ConformanceRecord rec = indcat::check_symmetric_multiplier(
        Polynomial{44, 45, 55, 51, 45}, Polynomial{1, 1, 1});
    CHECK(rec.verdict == Verdict::nonconform);
    CHECK(rec.observed.at("claim1_holds") == false);
    CHECK(rec.observed.at("product_shape").at("modes") == Json::array({3, 4}));
}

TEST_CASE("symmetric multiplier hypotheses are gated") {
    Polynomial q{1, 6, 7, 4, 1};
    ConformanceRecord asym = indcat::check_symmetric_multiplier(q, Polynomial{1, 2});
    CHECK(asym.verdict == Verdict::hypothesis_not_met);
    CHECK(asym.observed.at("hypothesis_failures")[0] == "multiplier not symmetric");

    ConformanceRecord odd = indcat::check_symmetric_multiplier(q, Polynomial{1, 2, 2, 1});
    CHECK(odd.verdict == Verdict::hypothesis_not_met);
    CHECK(odd.observed.at("hypothesis_failures")[0] == "multiplier degree odd");

    ConformanceRecord dip = indcat::check_symmetric_multiplier(q, Polynomial{2, 1, 2});
    CHECK(dip.verdict == Verdict::hypothesis_not_met);

    ConformanceRecord neither =
        indcat::check_symmetric_multiplier(Polynomial{1, 3, 2, 4, 1}, Polynomial{1, 2, 1});
    CHECK(neither.verdict == Verdict::hypothesis_not_met);
    CHECK(neither.observed.at("hypothesis_failures")[0] ==
          "q fits neither claim's hypotheses");
}

TEST_CASE("strict-sided inputs conform under random symmetric multipliers") {
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        const Dom cls = (seed % 2 == 1) ? Dom::strict_rd : Dom::strict_ld;
        const int d = 6 + static_cast<int>(seed % 7);
        Polynomial q = indcat::gen_dominant_poly(seed, cls, d, true);
        const int mu = indcat::modes_of(q).front();
        const int t = 2 * (1 + static_cast<int>(seed % static_cast<std::uint64_t>(mu / 2)));
        REQUIRE(t <= mu);
        Polynomial p_sym = random_symmetric_unimodal(seed * 3 + 1, t);
        ConformanceRecord rec = indcat::check_symmetric_multiplier(q, p_sym, seed);
        CAPTURE(seed, q.coeffs(), p_sym.coeffs());
        CHECK(rec.verdict == Verdict::conform);
    }
}

TEST_CASE("cross validation on the frozen pair") {
    ConformanceRecord rec = indcat::cross_validate_instance(CaterpillarSpec({3, 4}));
    CHECK(rec.verdict == Verdict::conform);
    CHECK(rec.observed.at("vertex_count") == 9);
    CHECK(rec.observed.at("methods").at("brute") == "computed");
    CHECK(rec.observed.at("agree") == true);
    CHECK(rec.observed.at("polynomial") ==
          Json::array({"1", "9", "28", "44", "40", "22", "7", "1"}));
    CHECK(rec.observed.at("multiplicity") == 3);
    CHECK(rec.observed.at("min_recurrence") == 3);
    CHECK(rec.observed.at("closed_k") == 3);
}

TEST_CASE("cross validation odds and ends") {
    CHECK(indcat::cross_validate_instance(CaterpillarSpec({1, 1, 1})).verdict ==
          Verdict::conform);

    ConformanceRecord desc = indcat::cross_validate_instance(CaterpillarSpec({5, 3}));
    CHECK(desc.verdict == Verdict::conform);
    CHECK(desc.observed.at("closed_k").is_null());

    ConformanceRecord no_brute = indcat::cross_validate_instance(CaterpillarSpec({3, 4}), 0);
    CHECK(no_brute.verdict == Verdict::conform);
    CHECK(no_brute.observed.at("methods").at("brute") == "skipped");

    ConformanceRecord large = indcat::cross_validate_instance(CaterpillarSpec({4, 9, 9, 10}));
    CHECK(large.verdict == Verdict::conform);
    CHECK(large.observed.at("methods").at("brute") == "skipped");
}

TEST_CASE("branch ties break the min recurrence") {
    ConformanceRecord rec = indcat::cross_validate_instance(CaterpillarSpec({1, 2, 1}));
    CHECK(rec.verdict == Verdict::nonconform);
    CHECK(rec.observed.at("agree") == true);
    CHECK(rec.observed.at("multiplicity") == 3);
    CHECK(rec.observed.at("min_recurrence") == 2);
}

TEST_CASE("instance check on the showcase spec") {
    ConformanceRecord rec = indcat::verify_theorem_instance(CaterpillarSpec({4, 9, 9, 10}));
    CHECK(rec.verdict == Verdict::conform);
    CHECK(rec.observed.at("d") == 32);
    CHECK(rec.observed.at("k") == Json::array({0, 4, 9, 13}));
    CHECK(rec.observed.at("p_claim_holds") == true);
    CHECK(rec.observed.at("p_shape").at("modes") == Json::array({16}));
    for (const auto& qc : rec.observed.at("q_claims")) CHECK(qc.at("holds") == true);
    REQUIRE(rec.observed.at("t_checks").size() == 2);
    const auto& t3 = rec.observed.at("t_checks")[0];
    CHECK(t3.at("t") == 4);
    CHECK(t3.at("t_le_mu") == true);
    CHECK(t3.at("tt_bound") == 12);
    CHECK(t3.at("tt_bound_ge_1") == true);
    const auto& t4 = rec.observed.at("t_checks")[1];
    CHECK(t4.at("t") == 6);
    CHECK(t4.at("tt_bound") == 15);
}

TEST_CASE("degenerate second step is scored by its own claim") {
    ConformanceRecord rec = indcat::verify_theorem_instance(CaterpillarSpec({6, 7}));
    CHECK(rec.verdict == Verdict::conform);
    const auto& pc = rec.predicted.at("q_claims")[1];
    CHECK(pc.at("degenerate") == true);
    CHECK(pc.at("modes") == Json::array({3, 4}));
    const auto& oc = rec.observed.at("q_claims")[1];
    CHECK(oc.at("holds") == true);
    CHECK(oc.at("shape").at("modes") == Json::array({3, 4}));
    CHECK(rec.observed.at("p_shape").at("modes") == Json::array({6}));
}

TEST_CASE("instance verdicts across the hypothesis boundary") {
    CHECK(indcat::verify_theorem_instance(CaterpillarSpec({3, 4})).verdict ==
          Verdict::conform);

    ConformanceRecord bad = indcat::verify_theorem_instance(CaterpillarSpec({5, 11, 11}));
    CHECK(bad.verdict == Verdict::nonconform);
    CHECK(bad.observed.at("conditions").at("all_pass") == true);
    CHECK(bad.observed.at("q_claims")[0].at("holds") == false);

    CHECK(indcat::verify_theorem_instance(CaterpillarSpec({3, 4, 5})).verdict ==
          Verdict::hypothesis_not_met);
    CHECK(indcat::verify_theorem_instance(CaterpillarSpec({4, 4})).verdict ==
          Verdict::hypothesis_not_met);

    ConformanceRecord desc = indcat::verify_theorem_instance(CaterpillarSpec({5, 3}));
    CHECK(desc.verdict == Verdict::hypothesis_not_met);
    CHECK(desc.observed.at("k") == Json::array({0, 3}));
}

TEST_CASE("base case probe records the documented discrepancies") {
    auto records = indcat::probe_base_case();
    REQUIRE(records.size() == 10);
    for (const auto& rec : records) {
        const int m1 = rec.inputs.at("m1").get<int>();
        const bool strictly =
            rec.observed.at("shape").at("strictly_unimodal").get<bool>();
        const bool expect_strict =
            (m1 == 3 || m1 == 4 || m1 == 6 || m1 == 8 || m1 == 10 || m1 == 12);
        CAPTURE(m1);
        CHECK(strictly == expect_strict);
        if (m1 >= 5 && m1 % 2 == 1)
            CHECK(rec.observed.at("shape").at("modes") ==
                  Json::array({(m1 - 1) / 2, (m1 + 1) / 2}));
        const bool expect_conform = expect_strict && m1 != 3;
        CHECK((rec.verdict == Verdict::conform) == expect_conform);
        CHECK(rec.observed.at("findings").empty() == expect_conform);
    }
}

TEST_CASE("full sweep tallies") {
    indcat::SweepConfig cfg;
    cfg.jobs = 2;
    indcat::SweepResult res = indcat::sweep_family(cfg);
    CHECK(res.summary.at("instances") == 340);
    CHECK(res.summary.at("cross_validate").at("conform") == 334);
    CHECK(res.summary.at("cross_validate").at("nonconform") == 6);
    CHECK(res.summary.at("cross_validate").at("hypothesis-not-met") == 0);
    CHECK(res.summary.at("theorem").at("conform") == 3);
    CHECK(res.summary.at("theorem").at("nonconform") == 0);
    CHECK(res.summary.at("theorem").at("hypothesis-not-met") == 337);

    std::vector<std::vector<int>> bad;
    for (const auto& r : res.records)
        if (r.cross.verdict == Verdict::nonconform) bad.push_back(r.m);
    CHECK(bad == std::vector<std::vector<int>>{{1, 2, 1},
                                               {1, 3, 2},
                                               {1, 4, 3},
                                               {2, 3, 1},
                                               {2, 4, 2},
                                               {3, 4, 1}});
}

TEST_CASE("monotone sweep tallies") {
    indcat::SweepConfig cfg;
    cfg.monotone_only = true;
    cfg.jobs = 2;
    indcat::SweepResult res = indcat::sweep_family(cfg);
    CHECK(res.summary.at("instances") == 69);
    CHECK(res.summary.at("cross_validate").at("conform") == 69);
    CHECK(res.summary.at("theorem").at("conform") == 3);
    CHECK(res.summary.at("theorem").at("hypothesis-not-met") == 66);
    std::vector<std::vector<int>> good;
    for (const auto& r : res.records)
        if (r.theorem.verdict == Verdict::conform) good.push_back(r.m);
    CHECK(good == std::vector<std::vector<int>>{{3}, {4}, {3, 4}});
}

TEST_CASE("sweep results are independent of parallelism") {
    indcat::SweepConfig cfg;
    cfg.m_max = 3;
    cfg.n_max = 2;
    indcat::SweepResult one = indcat::sweep_family(cfg);
    cfg.jobs = 4;
    indcat::SweepResult four = indcat::sweep_family(cfg);
    CHECK(one.summary == four.summary);
    REQUIRE(one.records.size() == four.records.size());
    for (std::size_t i = 0; i < one.records.size(); ++i) {
        CHECK(one.records[i].m == four.records[i].m);
        CHECK(one.records[i].cross.verdict == four.records[i].cross.verdict);
        CHECK(one.records[i].theorem.verdict == four.records[i].theorem.verdict);
    }
}

TEST_CASE("sweep with explicit spec lists") {
    indcat::SweepConfig cfg;
    cfg.explicit_specs = {{3, 4}, {1, 2, 1}};
    indcat::SweepResult res = indcat::sweep_family(cfg);
    REQUIRE(res.records.size() == 2);
    CHECK(res.records[0].cross.verdict == Verdict::conform);
    CHECK(res.records[1].cross.verdict == Verdict::nonconform);

    cfg.monotone_only = true;
    indcat::SweepResult filtered = indcat::sweep_family(cfg);
    REQUIRE(filtered.records.size() == 1);
    CHECK(filtered.records[0].m == std::vector<int>{3, 4});
}

TEST_CASE("sweep edge cases and validation") {
    indcat::SweepConfig empty;
    empty.m_min = 2;
    empty.m_max = 1;
    CHECK(indcat::sweep_family(empty).records.empty());

    indcat::SweepConfig too_big;
    too_big.explicit_specs = {{6, 6, 6, 6}};
    CHECK_THROWS_AS(indcat::sweep_family(too_big), std::invalid_argument);
    too_big.use_brute = false;
    CHECK_NOTHROW(indcat::sweep_family(too_big));

    indcat::SweepConfig bad;
    bad.jobs = 0;
    CHECK_THROWS_AS(indcat::sweep_family(bad), std::invalid_argument);
    bad.jobs = 1;
    bad.cap = 0;
    CHECK_THROWS_AS(indcat::sweep_family(bad), std::invalid_argument);
    bad.cap = 22;
    bad.m_min = 0;
    CHECK_THROWS_AS(indcat::sweep_family(bad), std::invalid_argument);
}

TEST_CASE("sweep writes JSONL and CSV side outputs") {
    indcat::SweepConfig cfg;
    cfg.m_min = 3;
    cfg.m_max = 4;
    cfg.n_min = 2;
    cfg.n_max = 2;
    cfg.out_path = "sweep_test_records.jsonl";
    cfg.csv_path = "sweep_test_records.csv";
    indcat::SweepResult res = indcat::sweep_family(cfg);
    REQUIRE(res.records.size() == 4);

    std::ifstream jl(cfg.out_path);
    REQUIRE(jl.good());
    std::vector<std::string> lines;
    for (std::string line; std::getline(jl, line);) lines.push_back(line);
    REQUIRE(lines.size() == 5);
    Json first = Json::parse(lines[0]);
    CHECK(first.at("spec").at("m") == Json::array({3, 3}));
    CHECK(Json::parse(lines.back()).contains("summary"));

    std::ifstream cs(cfg.csv_path);
    REQUIRE(cs.good());
    std::vector<std::string> rows;
    for (std::string line; std::getline(cs, line);) rows.push_back(line);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "spec,verdict,mode,k,d");
    CHECK(rows[2] == "\"3,4\",conform,3,3,7");
    std::remove(cfg.out_path.c_str());
    std::remove(cfg.csv_path.c_str());
}
