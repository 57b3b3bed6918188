#include "hnstrata/invariants.hpp"
#include "hnstrata/rules.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

using namespace hnstrata;

namespace {

const CurveContext kG2 = make_curve_context(2);

bool cites(const Verdict& v, std::string_view id) {
    return std::any_of(v.provenance.begin(), v.provenance.end(),
                       [&](const Provenance& p) { return p.rule_id == id; });
}

bool cites(const LocusVerdict& v, std::string_view id) {
    return std::any_of(v.provenance.begin(), v.provenance.end(),
                       [&](const Provenance& p) { return p.rule_id == id; });
}

// The BGN inequality written directly in machine integers.
bool bgn_ref(long long g, long long n, long long d, long long k) {
    return n <= d + (n - k) * g && !(d == n && k == n);
}

}  // namespace

TEST_CASE("curve context needs genus at least two") {
    CHECK_THROWS_AS(make_curve_context(1), std::invalid_argument);
    CHECK(make_curve_context(3, CurveClass::Petri).curve_class == CurveClass::Petri);
}

TEST_CASE("rule catalog is enumerable with unique ids") {
    std::set<std::string_view> ids;
    for (const auto& r : rule_catalog()) {
        CHECK_FALSE(r.citation.empty());
        CHECK(ids.insert(r.id).second);
    }
    for (const char* id : {"GATE-GAP", "GATE-CHI", "GATE-H1", "GATE-CLIFFORD", "BGN-iff", "TEOP3",
                           "GENUS2", "TEO2-LIFT", "TEOP05", "TEOPETRIF", "FILTRATION"})
        CHECK(ids.count(id) == 1);
    CHECK_THROWS_AS(rule_info("NOPE"), std::out_of_range);
}

TEST_CASE("status strings are fixed") {
    CHECK(to_string(Status::Empty) == "empty");
    CHECK(to_string(Status::NonEmptyU) == "nonempty-U");
    CHECK(to_string(Status::NonEmptyBk) == "nonempty-Bk");
    CHECK(to_string(Status::Unknown) == "unknown");
    for (Status s : {Status::Empty, Status::NonEmptyU, Status::NonEmptyBk, Status::Unknown})
        CHECK(parse_status(to_string(s)) == s);
    for (Tri t : {Tri::Yes, Tri::No, Tri::Unknown}) CHECK(parse_tri(to_string(t)) == t);
    for (CurveClass c : {CurveClass::Arbitrary, CurveClass::General, CurveClass::Petri})
        CHECK(parse_curve_class(to_string(c)) == c);
    CHECK_THROWS_AS(parse_status("empty-ish"), std::invalid_argument);
}

TEST_CASE("gates on (2,3,1,0) at genus two") {
    Length2Type t(2, 3, 1, 0);
    auto g0 = gate_stratum(t, 2, 0);
    CHECK_FALSE(g0.pass);
    CHECK(g0.reason == GateReason::BelowChi);
    auto g1 = gate_stratum(t, 2, 1);
    CHECK_FALSE(g1.pass);
    CHECK(g1.reason == GateReason::ZeroH1);
    CHECK(gate_stratum(t, 2, 2).pass);
    CHECK(gate_stratum(t, 2, 3).pass);
    auto g4 = gate_stratum(t, 2, 4);
    CHECK(g4.reason == GateReason::CliffordExceeded);
    CHECK(gate_stratum(Length2Type(1, 5, 1, 0), 2, 3).reason == GateReason::GapTooLarge);
    CHECK_THROWS_AS(gate_stratum(t, 2, -1), std::invalid_argument);
}

TEST_CASE("gate order: gap, chi, h1, Clifford") {
    for (long long g = 2; g <= 4; ++g)
        for (long long n1 = 1; n1 <= 3; ++n1)
            for (long long n2 = 1; n2 <= 3; ++n2)
                for (long long d1 = -4; d1 <= 8; ++d1)
                    for (long long d2 = -4; d2 <= 4; ++d2) {
                        long long d0 = n2 * d1 - n1 * d2;
                        if (d0 <= 0) continue;
                        Length2Type t(n1, d1, n2, d2);
                        long long n0 = n1 * n2;
                        long long chi0 = d0 + n0 * (1 - g);
                        long long cliff = (d0 + 2 * n0) / 2;
                        for (long long k = 0; k <= cliff + 2; ++k) {
                            GateReason want = GateReason::None;
                            if (d0 > (2 * g - 2) * n0) want = GateReason::GapTooLarge;
                            else if (k < chi0) want = GateReason::BelowChi;
                            else if (k == chi0) want = GateReason::ZeroH1;
                            else if (k > cliff) want = GateReason::CliffordExceeded;
                            auto r = gate_stratum(t, g, k);
                            CHECK(r.reason == want);
                            CHECK(r.pass == (want == GateReason::None));
                        }
                    }
}

TEST_CASE("rule_bgn worked examples") {
    auto v = rule_bgn(2, 2, 3, 2);
    CHECK(v.existence == Existence::NonEmpty);
    CHECK(v.dimension == Integer(3));
    CHECK(v.irreducible == Tri::Yes);
    CHECK(v.smooth == Tri::Yes);
    CHECK(rule_bgn(2, 2, 3, 3).existence == Existence::Empty);

    for (long long g = 2; g <= 5; ++g)
        for (long long n = 1; n <= 5; ++n) CHECK(rule_bgn(g, n, n, n).existence == Existence::Empty);

    auto whole = rule_bgn(2, 2, 3, 1);
    CHECK(whole.existence == Existence::NonEmpty);
    CHECK(whole.dimension == Integer(5));
    CHECK(whole.smooth == Tri::No);  // B(2,3,2) is non-empty
    CHECK(std::any_of(whole.notes.begin(), whole.notes.end(),
                      [](const std::string& s) { return s.find("M(n,d)") != std::string::npos; }));

    CHECK(rule_bgn(2, 2, 4, 1).existence == Existence::Unknown);
    CHECK(rule_bgn(2, 2, 0, 1).existence == Existence::Unknown);
}

TEST_CASE("rule_bgn agrees with the inequality and is monotone in k") {
    for (long long g = 2; g <= 7; ++g)
        for (long long n = 1; n <= 7; ++n)
            for (long long d = 1; d < 2 * n; ++d)
                for (long long k = 0; k <= n + 4; ++k) {
                    auto v = rule_bgn(g, n, d, k);
                    INFO(g << " " << n << " " << d << " " << k);
                    CHECK((v.existence == Existence::NonEmpty) == bgn_ref(g, n, d, k));
                    CHECK(v.existence != Existence::Unknown);
                    CHECK_FALSE(v.provenance.empty());
                    if (v.existence == Existence::Empty)
                        CHECK(rule_bgn(g, n, d, k + 1).existence == Existence::Empty);
                    if (v.existence == Existence::NonEmpty) {
                        bool next = bgn_ref(g, n, d, k + 1);
                        CHECK(v.smooth == (next ? Tri::No : Tri::Yes));
                    }
                }
}

TEST_CASE("rule_bn_chi") {
    auto v = rule_bn_chi(2, 1, 4, 3);
    CHECK(v.existence == Existence::NonEmpty);
    CHECK(v.dimension == Integer(2));
    CHECK(rule_bn_chi(2, 1, 4, 4).existence == Existence::Unknown);
}

TEST_CASE("sufficient conditions on general and Petri curves") {
    auto general5 = make_curve_context(5, CurveClass::General);
    auto v = rule_general_curve(general5, 2, 9, 1);
    CHECK(v.existence == Existence::NonEmpty);
    CHECK(cites(v, "BN-GENERAL"));
    CHECK(rule_general_curve(general5, 2, 9, 2).existence == Existence::Unknown);
    CHECK(rule_general_curve(make_curve_context(5), 2, 9, 1).existence == Existence::Unknown);
    CHECK(rule_general_curve(make_curve_context(5, CurveClass::Petri), 2, 9, 1).existence ==
          Existence::Unknown);
    // no s with 1 < s < g when g = 2
    CHECK(rule_general_curve(make_curve_context(2, CurveClass::General), 2, 9, 1).existence ==
          Existence::Unknown);
    // d' = 3 < 7/2 for s = 2, and s = 3, 4 need d' >= 16/3, 27/4
    CHECK(rule_general_curve(general5, 2, 7, 1).existence == Existence::Unknown);

    auto general3 = make_curve_context(3, CurveClass::General);
    CHECK(rule_generic_curve(general3, 2, 4, 2).existence == Existence::Unknown);
    CHECK(rule_generic_curve(general3, 2, 6, 2).existence == Existence::Unknown);
    auto row2 = rule_generic_curve(general3, 2, 8, 2);
    CHECK(row2.existence == Existence::NonEmpty);
    CHECK(row2.expected_component);
    CHECK(rule_generic_curve(general3, 2, 5, 1).existence == Existence::NonEmpty);  // d2 >= k2
    CHECK(rule_generic_curve(general3, 3, 3, 1).existence == Existence::NonEmpty);  // d2 < k2
    CHECK(rule_generic_curve(make_curve_context(3), 2, 8, 2).existence == Existence::Unknown);

    auto petri7 = make_curve_context(7, CurveClass::Petri);
    for (long long d : {-3, 0, 11, 40}) CHECK(rule_petri(petri7, 5, d).existence == Existence::NonEmpty);
    CHECK(rule_petri(make_curve_context(5, CurveClass::Petri), 5, 1).existence == Existence::Unknown);
    CHECK(rule_petri(make_curve_context(7, CurveClass::General), 5, 1).existence ==
          Existence::Unknown);
    CHECK(rule_petri(make_curve_context(7, CurveClass::Petri), 4, 1).existence == Existence::Unknown);
}

TEST_CASE("rule_generic_curve rows against a direct table") {
    for (long long g = 2; g <= 6; ++g) {
        auto ctx = make_curve_context(g, CurveClass::General);
        for (long long n = 1; n <= 4; ++n)
            for (long long d = 0; d <= 20; ++d)
                for (long long k = 0; k <= 12; ++k) {
                    long long d1 = d / n, d2 = d % n, k1 = k / n, k2 = k % n;
                    bool want;
                    if (d2 == 0 && k2 == 0) want = g - k1 * (g - d1 + k1 + 1) > 1;
                    else if (d2 < k2) want = g - (k1 + 1) * (g - d1 + k1) >= 1;
                    else want = g - (k1 + 1) * (g - d1 + k1 - 1) >= 1;
                    auto v = rule_generic_curve(ctx, n, d, k);
                    CHECK((v.existence == Existence::NonEmpty) == want);
                    CHECK(v.existence != Existence::Empty);
                }
    }
}

TEST_CASE("chained certification of B(n,d,k)") {
    CHECK(cites(certify_bn_nonempty(kG2, 1, 4, 3), "BN-CHI"));
    CHECK(certify_bn_nonempty(make_curve_context(3), 1, 5, 3).existence == Existence::NonEmpty);
    CHECK(cites(certify_bn_nonempty(kG2, 2, 3, 2), "BGN-iff"));
    CHECK(certify_bn_nonempty(kG2, 2, 3, 3).existence == Existence::Empty);
    CHECK(certify_bn_nonempty(kG2, 1, 5, 5).existence == Existence::Unknown);
    auto petri = certify_bn_nonempty(make_curve_context(7, CurveClass::Petri), 5, 30, 6);
    CHECK(cites(petri, "BN-PETRI"));
}

TEST_CASE("rule_teop3 worked examples") {
    auto v = rule_teop3(2, 3, 3, 0, 2);
    CHECK(v.status == Status::NonEmptyU);
    CHECK(v.dimension == Integer(5));
    CHECK(v.irreducible == Tri::Yes);
    CHECK(v.smooth == Tri::Yes);
    CHECK(cites(v, "TEOP3"));

    auto e = rule_teop3(2, 3, 3, 0, 3);
    CHECK(e.status == Status::Empty);
    CHECK_FALSE(e.dimension.has_value());

    for (long long k = 0; k <= 5; ++k) CHECK(rule_teop3(2, 3, 4, 0, k).status == Status::Unknown);

    // k = 1 sits on h^1 = 0: gated abstains, raw evaluates the inequality
    CHECK(rule_teop3(2, 3, 3, 0, 1).status == Status::Unknown);
    CHECK(rule_teop3(2, 3, 3, 0, 1, Gating::Raw).status == Status::NonEmptyU);
}

TEST_CASE("rule_teop3 is the BGN criterion on the twist") {
    long long cases = 0;
    for (long long g = 2; g <= 6; ++g)
        for (long long n = 2; n <= 7; ++n)
            for (long long a = -3; a <= 3; ++a)
                for (long long d = a * n + 1; d < a * n + 2 * (n - 1); ++d)
                    for (long long k = 0; k <= n + 3; ++k) {
                        auto v = rule_teop3(g, n, d, a, k, Gating::Raw);
                        auto b = rule_bgn(g, n - 1, d - a * n, k);
                        bool excluded = d - a * n == n - 1 && k == n - 1;
                        ++cases;
                        INFO(g << " " << n << " " << d << " " << a << " " << k);
                        if (excluded) {
                            CHECK(v.status == Status::Unknown);
                            continue;
                        }
                        CHECK((v.status == Status::NonEmptyU) ==
                              (b.existence == Existence::NonEmpty));
                        CHECK((v.status == Status::Empty) == (b.existence == Existence::Empty));
                        if (v.status == Status::NonEmptyU) {
                            Length2Type t(n - 1, d - a, 1, a);
                            CHECK(v.dimension == beta(g, t, k));
                        }
                    }
    CHECK(cases > 10000);
}

TEST_CASE("rule_genus2") {
    auto v = rule_genus2(2, 3, 3, 0, 2);
    CHECK(v.status == Status::NonEmptyU);
    CHECK(v.dimension == Integer(5));
    for (long long k = 0; k <= 6; ++k) {
        auto e = rule_genus2(2, 3, 7, 0, k);
        CHECK(e.status == Status::Empty);
        CHECK(cites(e, "GENUS2"));
    }
    CHECK(rule_genus2(2, 3, 3, 0, 1).status == Status::Unknown);
    CHECK(rule_genus2(2, 3, 3, 0, 1, Gating::Raw).status == Status::NonEmptyU);
    CHECK(rule_genus2(3, 3, 3, 0, 2).status == Status::Unknown);
}

TEST_CASE("rule_genus2 never contradicts rule_teop3 past the gates") {
    for (long long n = 2; n <= 8; ++n)
        for (long long d = -20; d <= 20; ++d)
            for (long long a = -12; a <= 12; ++a) {
                if (d - a * n <= 0) continue;
                Length2Type t(n - 1, d - a, 1, a);
                if (!admissible_gap(t, 2)) continue;
                for (long long k = 0; k <= clifford_max_k(t); ++k) {
                    if (!gate_stratum(t, 2, k).pass) continue;
                    auto x = rule_teop3(2, n, d, a, k);
                    auto y = rule_genus2(2, n, d, a, k);
                    bool clash = (x.status == Status::Empty && y.status == Status::NonEmptyU) ||
                                 (x.status == Status::NonEmptyU && y.status == Status::Empty);
                    INFO(n << " " << d << " " << a << " " << k);
                    CHECK_FALSE(clash);
                }
            }
}

TEST_CASE("rule_teop4 chains the general-curve criteria through the twist") {
    // twist B(2, 9, 1); k = 1 sits on h^1 = 0, so only the raw form fires
    auto general5 = make_curve_context(5, CurveClass::General);
    Length2Type t(2, 9, 1, 0);  // d0 = 9, n1 = 2
    auto chained = rule_general_curve(general5, 2, 9, 1);
    REQUIRE(chained.existence == Existence::NonEmpty);
    auto gate = gate_stratum(t, 5, 1);
    auto v = rule_teop4(general5, t, 1, Gating::Raw);
    CHECK(v.status == Status::NonEmptyU);
    CHECK(cites(v, "TEOP4-GENERAL"));
    CHECK(cites(v, "BN-GENERAL"));
    CHECK_FALSE(v.dimension.has_value());
    REQUIRE_FALSE(gate.pass);
    CHECK(rule_teop4(general5, t, 1).status == Status::Unknown);
    CHECK(rule_teop4(make_curve_context(5), t, 1).status == Status::Unknown);
    CHECK(rule_teop4(general5, Length2Type(1, 3, 2, 1), 1).status == Status::Unknown);
}

TEST_CASE("rule_teop4 on a Petri curve needs the hypotheses on n and n-1") {
    // n = 6: n - 1 = 5 >= 5 and g >= 2n - 4 = 8
    auto petri8 = make_curve_context(8, CurveClass::Petri);
    Length2Type t(5, 40, 1, 0);  // d0 = 40, n0 = 5, chi0 = 5, h1(6) = 1
    REQUIRE(gate_stratum(t, 8, 6).pass);
    auto v = rule_teop4(petri8, t, 6);
    CHECK(v.status == Status::NonEmptyU);
    CHECK(cites(v, "TEOP4-PETRI"));
    CHECK(rule_teop4(petri8, t, 5).status == Status::Unknown);
    CHECK(rule_teop4(make_curve_context(7, CurveClass::Petri), t, 6).status == Status::Unknown);
}

TEST_CASE("multiplication defect") {
    CHECK(multiplication_defect(3, 4, 8) == 4);
    CHECK(multiplication_defect(5, 6, 30) == 0);
    CHECK(multiplication_defect(2, 3, 2) == 4);
}

TEST_CASE("syzygy construction worked example") {
    CHECK(teop05_bound(2, 1, 4, 2, 1, 5) == 4);
    for (long long k = 0; k <= 4; ++k) {
        for (bool trust : {false, true}) {
            auto v = rule_teop05(kG2, 1, 4, 2, 1, 5, k, {trust});
            CHECK(v.status == Status::NonEmptyBk);
            CHECK(v.bk_nonempty == Tri::Yes);
            CHECK(cites(v, "TEOP05"));
            CHECK(cites(v, "BN-CHI"));
            REQUIRE(v.conflicts.size() == 1);
        }
    }
    CHECK(rule_teop05(kG2, 1, 4, 2, 1, 5, 5).status == Status::Unknown);
    CHECK(rule_teop05(kG2, 1, 4, 0, 1, 5, 1).status == Status::Unknown);
    CHECK(rule_teop05(kG2, 1, 4, 2, 1, 4, 1).status == Status::Unknown);
    // d1 = 6 = a(g+1) violates the strict bound
    CHECK(rule_teop05(kG2, 1, 6, 2, 1, 5, 1).status == Status::Unknown);
}

TEST_CASE("syzygy construction bound formula") {
    for (long long g = 2; g <= 4; ++g)
        for (long long n1 = 1; n1 <= 3; ++n1)
            for (long long d1 = 0; d1 <= 12; ++d1)
                for (long long a = 1; a <= 4; ++a)
                    for (long long m = 1; m <= 2; ++m)
                        for (long long d2 = 0; d2 <= 20; ++d2) {
                            long long want = (d2 + m * (1 - g)) * (n1 + a) -
                                             (d2 * n1 + d1 * m + m * n1 * (1 - g));
                            CHECK(teop05_bound(g, n1, d1, a, m, d2) == want);
                            // positive whenever the hypotheses hold
                            if (2 * n1 < d1 && d1 < a * (g + 1) && d2 > 2 * g * m) CHECK(want > 0);
                        }
}

TEST_CASE("Petri syzygy construction") {
    auto petri3 = make_curve_context(3, CurveClass::Petri);
    for (long long k = 0; k <= 2; ++k) {
        auto v = rule_teopetrif(petri3, 1, 5, 3, 2, 4, k);
        CHECK(v.status == Status::NonEmptyBk);
        CHECK(v.conflicts.size() == 1);
        auto trusted = rule_teopetrif(petri3, 1, 5, 3, 2, 4, k, {true});
        CHECK(trusted.status == Status::NonEmptyBk);
    }
    CHECK(rule_teopetrif(petri3, 1, 5, 3, 2, 4, 3).status == Status::Unknown);
    CHECK(rule_teopetrif(make_curve_context(3), 1, 5, 3, 2, 4, 0).status == Status::Unknown);
    CHECK(rule_teopetrif(make_curve_context(5, CurveClass::Petri), 1, 30, 3, 5, 6, 0).status ==
          Status::Unknown);
    CHECK(rule_teopetrif(petri3, 1, 5, 1, 2, 4, 0).status == Status::Unknown);  // bound 2 - 4 < 0

    // type (2,3,4,4) at k = 0 passes every gate: the upgrade needs the flag
    Length2Type t(2, 3, 4, 4);
    REQUIRE(gate_stratum(t, 3, 0).pass);
    auto plain = rule_teopetrif(petri3, 2, 3, 2, 4, 4, 0);
    CHECK(plain.status == Status::NonEmptyBk);
    CHECK(plain.conflicts.empty());
    auto trusted = rule_teopetrif(petri3, 2, 3, 2, 4, 4, 0, {true});
    CHECK(trusted.status == Status::NonEmptyU);
    CHECK(cites(trusted, "BGN-iff"));
}

TEST_CASE("Y_k from BGN and the projective-bundle lift") {
    Length2Type w1(2, 3, 1, 0);
    auto yk = yk_from_bgn(2, w1, 2);
    CHECK(yk.existence == Existence::NonEmpty);
    CHECK(yk.dimension == Integer(5));
    auto u = lift_to_U(yk, w1, 2, 2);
    CHECK(u.status == Status::NonEmptyU);
    CHECK(u.dimension == beta(2, w1, 2));
    CHECK(u.irreducible == Tri::Yes);
    CHECK(u.smooth == Tri::Yes);
    CHECK(cites(u, "TEO2-LIFT"));

    auto gated = lift_to_U(yk_from_bgn(2, w1, 1), w1, 2, 1);
    CHECK(gated.status == Status::Empty);
    CHECK(cites(gated, "GATE-H1"));

    CHECK_THROWS_AS(yk_from_bgn(2, Length2Type(1, 3, 2, 1), 1), std::invalid_argument);

    // the lift reproduces beta wherever BGN applies to the twist
    for (long long g = 2; g <= 5; ++g)
        for (long long n1 = 1; n1 <= 5; ++n1)
            for (long long d0 = 1; d0 < 2 * n1; ++d0)
                for (long long a = -2; a <= 2; ++a) {
                    Length2Type t(n1, d0 + n1 * a, 1, a);
                    for (long long k = 0; k <= clifford_max_k(t); ++k) {
                        auto y = yk_from_bgn(g, t, k);
                        if (y.existence != Existence::NonEmpty || !gate_stratum(t, g, k).pass)
                            continue;
                        CHECK(lift_to_U(y, t, g, k).dimension == beta(g, t, k));
                    }
                }
}

TEST_CASE("merge is order independent and records conflicts") {
    Verdict empty;
    empty.status = Status::Empty;
    empty.provenance.push_back({"GATE-CHI", "c", "x"});
    Verdict u;
    u.status = Status::NonEmptyU;
    u.dimension = Integer(4);
    u.irreducible = Tri::Yes;
    u.provenance.push_back({"TEOP3", "c", "y"});
    Verdict u2 = u;
    u2.dimension = Integer(5);
    u2.irreducible = Tri::No;
    u2.provenance = {{"GENUS2", "c", "z"}};
    Verdict bk;
    bk.status = Status::NonEmptyBk;
    bk.bk_nonempty = Tri::Yes;
    bk.provenance.push_back({"TEOP05", "c", "w"});

    std::vector<Verdict> vs{empty, u, u2, bk};
    std::vector<int> idx{0, 1, 2, 3};
    std::optional<Verdict> first;
    do {
        std::vector<Verdict> perm;
        for (int i : idx) perm.push_back(vs[i]);
        Verdict m = merge_verdicts(perm);
        if (!first) first = m;
        CHECK(m == *first);
    } while (std::next_permutation(idx.begin(), idx.end()));
    CHECK(first->status == Status::Unknown);
    CHECK(first->conflicts.size() == 2);
    CHECK(first->provenance.front().rule_id == "GATE-CHI");

    std::vector<Verdict> two{u, u2};
    Verdict m = merge_verdicts(two);
    CHECK(m.status == Status::NonEmptyU);
    CHECK_FALSE(m.dimension.has_value());
    CHECK(m.irreducible == Tri::Unknown);
    CHECK(m.conflicts.size() == 2);

    std::vector<Verdict> weak{bk, Verdict{}};
    CHECK(merge_verdicts(weak).status == Status::NonEmptyBk);
    std::vector<Verdict> strong{bk, u};
    CHECK(merge_verdicts(strong).status == Status::NonEmptyU);
    std::vector<Verdict> gone{bk, empty};
    CHECK(merge_verdicts(gone).status == Status::Empty);
    CHECK(merge_verdicts(std::vector<Verdict>{}).status == Status::Unknown);
}
