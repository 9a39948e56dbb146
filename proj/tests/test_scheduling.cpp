#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "arena/scheduling.hpp"
#include "doctest.h"

using namespace arena;

namespace {

std::vector<std::string> make_ids(int n) {
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) {
        // Zero-padded so lexicographic id order equals dataset order.
        char buf[8];
        std::snprintf(buf, sizeof buf, "i%03d", i);
        ids.emplace_back(buf);
    }
    return ids;
}

// Every id in exactly one pair or the bye.
void check_partition(const RoundSchedule& s,
                     const std::vector<std::string>& ids) {
    std::set<std::string> seen;
    for (const auto& [a, b] : s.pairs) {
        CHECK(a != b);
        CHECK(seen.insert(a).second);
        CHECK(seen.insert(b).second);
    }
    if (s.bye) CHECK(seen.insert(*s.bye).second);
    CHECK(seen.size() == ids.size());
    CHECK(s.bye.has_value() == (ids.size() % 2 == 1));
}

std::set<std::pair<std::string, std::string>> pair_set(
    const RoundSchedule& s) {
    std::set<std::pair<std::string, std::string>> out;
    for (auto [a, b] : s.pairs) {
        if (b < a) std::swap(a, b);
        out.insert({a, b});
    }
    return out;
}

}  // namespace

TEST_CASE("match history is symmetric and irreflexive") {
    MatchHistory h;
    CHECK_FALSE(h.played("a", "b"));
    h.record("a", "b");
    CHECK(h.played("a", "b"));
    CHECK(h.played("b", "a"));
    CHECK(h.count("b", "a") == 1);
    CHECK_FALSE(h.played("a", "a"));
    h.record("b", "a");
    CHECK(h.count("a", "b") == 2);
    CHECK_THROWS_AS(h.record("a", "a"), std::invalid_argument);
}

TEST_CASE("record_round marks exactly the scheduled pairs") {
    MatchHistory h;
    RoundSchedule s;
    s.pairs = {{"a", "b"}, {"c", "d"}, {"e", "f"}};
    record_round(h, s);
    CHECK(h.counts().size() == 3);
    CHECK(h.played("a", "b"));
    CHECK(h.played("d", "c"));
    CHECK_FALSE(h.played("a", "c"));
}

TEST_CASE("schedule_random basics") {
    Rng rng(1);
    auto two = schedule_random({"a", "b"}, rng);
    REQUIRE(two.pairs.size() == 1);
    CHECK_FALSE(two.bye);

    auto one = schedule_random({"a"}, rng);
    CHECK(one.pairs.empty());
    CHECK(one.bye == "a");

    auto zero = schedule_random({}, rng);
    CHECK(zero.pairs.empty());
    CHECK_FALSE(zero.bye);
}

TEST_CASE("schedule_random is deterministic for a fixed seed") {
    Rng r1(42), r2(42);
    auto a = schedule_random(make_ids(17), r1);
    auto b = schedule_random(make_ids(17), r2);
    CHECK(a.pairs == b.pairs);
    CHECK(a.bye == b.bye);
    CHECK(a.bye.has_value());
}

TEST_CASE("schedule_random partitions and spreads pairings") {
    auto ids = make_ids(64);
    std::map<std::pair<std::string, std::string>, int> freq;
    Rng rng(7);
    const int draws = 1000;
    for (int d = 0; d < draws; ++d) {
        auto s = schedule_random(ids, rng, d);
        check_partition(s, ids);
        for (const auto& p : pair_set(s)) freq[p] += 1;
    }
    // 32,000 sampled pairs over 2016 possible: expected ~15.87 per pair.
    // A chi-square-style sanity check: no pair wildly over- or under-drawn.
    const double expected = draws * 32.0 / 2016.0;
    double chi2 = 0.0;
    for (const auto& id_a : ids) {
        for (const auto& id_b : ids) {
            if (id_a >= id_b) continue;
            int n = freq.count({id_a, id_b}) ? freq.at({id_a, id_b}) : 0;
            chi2 += (n - expected) * (n - expected) / expected;
            CHECK(n < expected * 4);
        }
    }
    // 2015 dof; mean 2015, sd ~63.5. Seeded, so this is a fixed number.
    CHECK(chi2 > 1700);
    CHECK(chi2 < 2350);
}

TEST_CASE("schedule_graph round 1 pairs in dataset order") {
    MatchHistory empty;
    auto s = schedule_graph({"w", "x", "y", "z"}, empty, 4);
    REQUIRE(s.pairs.size() == 2);
    CHECK(s.pairs[0] == std::pair<std::string, std::string>{"w", "x"});
    CHECK(s.pairs[1] == std::pair<std::string, std::string>{"y", "z"});
}

TEST_CASE("schedule_graph hand-traced path example") {
    // History is the path a-b-c; d is disconnected, so every pair with d
    // sits at distance n_total=4 and (a,d) wins the tie-break.
    MatchHistory h;
    h.record("a", "b");
    h.record("b", "c");
    auto s = schedule_graph({"a", "b", "c", "d"}, h, 4);
    REQUIRE(s.pairs.size() == 2);
    CHECK(s.pairs[0] == std::pair<std::string, std::string>{"a", "d"});
    CHECK(s.pairs[1] == std::pair<std::string, std::string>{"b", "c"});
}

TEST_CASE("schedule_graph round 2 never repeats a round-1 pair") {
    for (int n : {4, 5, 8, 16, 33, 64}) {
        auto ids = make_ids(n);
        MatchHistory h;
        auto r1 = schedule_graph(ids, h, n, 0);
        check_partition(r1, ids);
        record_round(h, r1);
        auto r2 = schedule_graph(ids, h, n, 1);
        check_partition(r2, ids);
        auto first = pair_set(r1);
        for (const auto& p : pair_set(r2)) {
            CHECK(first.count(p) == 0);
        }
    }
}

TEST_CASE("schedule_graph repeat rate at most random's over 10 seeds") {
    const int n = 64, rounds = 10;
    auto ids = make_ids(n);
    std::vector<double> graph_repeats, random_repeats;
    for (uint64_t seed = 0; seed < 10; ++seed) {
        int rep_g = 0, rep_r = 0, total = 0;
        MatchHistory hg, hr;
        Rng rng(seed);
        for (int r = 0; r < rounds; ++r) {
            auto sg = schedule_graph(ids, hg, n, r);
            auto sr = schedule_random(ids, rng, r);
            for (const auto& [a, b] : sg.pairs) rep_g += hg.played(a, b);
            for (const auto& [a, b] : sr.pairs) rep_r += hr.played(a, b);
            total += static_cast<int>(sg.pairs.size());
            record_round(hg, sg);
            record_round(hr, sr);
        }
        graph_repeats.push_back(double(rep_g) / total);
        random_repeats.push_back(double(rep_r) / total);
    }
    std::sort(graph_repeats.begin(), graph_repeats.end());
    std::sort(random_repeats.begin(), random_repeats.end());
    CHECK(graph_repeats[4] <= random_repeats[4]);  // medians (10 samples)
}

TEST_CASE("schedule_swiss pairs i with 7-i inside octets") {
    std::vector<Rating> ratings;
    for (int i = 0; i < 8; ++i) {
        ratings.push_back({"r" + std::to_string(i), 1100.0 - i * 10.0});
    }
    auto s = schedule_swiss(ratings);
    REQUIRE(s.pairs.size() == 4);
    CHECK(s.pairs[0] == std::pair<std::string, std::string>{"r0", "r7"});
    CHECK(s.pairs[1] == std::pair<std::string, std::string>{"r1", "r6"});
    CHECK(s.pairs[2] == std::pair<std::string, std::string>{"r2", "r5"});
    CHECK(s.pairs[3] == std::pair<std::string, std::string>{"r3", "r4"});
    CHECK_FALSE(s.bye);
}

TEST_CASE("schedule_swiss forms independent groups of 8") {
    std::vector<Rating> ratings;
    for (int i = 0; i < 16; ++i) {
        ratings.push_back({"r" + std::to_string(i), 2000.0 - i});
    }
    auto s = schedule_swiss(ratings);
    REQUIRE(s.pairs.size() == 8);
    // rank(x) + rank(y) == 7 (mod 8) within each group.
    for (int i = 0; i < 4; ++i) {
        CHECK(s.pairs[i].first == "r" + std::to_string(i));
        CHECK(s.pairs[i].second == "r" + std::to_string(7 - i));
        CHECK(s.pairs[4 + i].first == "r" + std::to_string(8 + i));
        CHECK(s.pairs[4 + i].second == "r" + std::to_string(15 - i));
    }
}

TEST_CASE("schedule_swiss short final group mirrors and byes the middle") {
    std::vector<Rating> three{{"r0", 1030}, {"r1", 1020}, {"r2", 1010}};
    auto s = schedule_swiss(three);
    REQUIRE(s.pairs.size() == 1);
    CHECK(s.pairs[0] == std::pair<std::string, std::string>{"r0", "r2"});
    CHECK(s.bye == "r1");

    // 11 = one octet + short group of 3.
    std::vector<Rating> eleven;
    for (int i = 0; i < 11; ++i) {
        eleven.push_back({"q" + std::to_string(i), 1200.0 - i});
    }
    auto s11 = schedule_swiss(eleven);
    REQUIRE(s11.pairs.size() == 5);
    CHECK(s11.pairs[4] == std::pair<std::string, std::string>{"q8", "q10"});
    CHECK(s11.bye == "q9");
}

TEST_CASE("schedule_swiss breaks elo ties by input order") {
    std::vector<Rating> tied{{"a", 1000}, {"b", 1000}, {"c", 1000},
                             {"d", 1000}};
    auto s = schedule_swiss(tied);
    REQUIRE(s.pairs.size() == 2);
    CHECK(s.pairs[0] == std::pair<std::string, std::string>{"a", "d"});
    CHECK(s.pairs[1] == std::pair<std::string, std::string>{"b", "c"});
}

TEST_CASE("every scheduler partitions odd and even pools") {
    for (int n : {2, 3, 7, 8, 9, 24}) {
        auto ids = make_ids(n);
        MatchHistory h;
        Rng rng(11);
        check_partition(schedule_random(ids, rng), ids);
        check_partition(schedule_graph(ids, h, n), ids);
        std::vector<Rating> ratings;
        for (int i = 0; i < n; ++i) ratings.push_back({ids[i], 1000.0 + i});
        check_partition(schedule_swiss(ratings), ids);
    }
}

TEST_CASE("schedulers reject duplicate ids") {
    Rng rng(0);
    MatchHistory h;
    CHECK_THROWS_AS(schedule_random({"a", "a"}, rng), std::invalid_argument);
    CHECK_THROWS_AS(schedule_graph({"a", "a"}, h, 2), std::invalid_argument);
}
