#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bordermdl/codec.hpp"
#include "oracles.hpp"

using namespace bordermdl;

namespace {

/// Singletons plus {PB:1,LQ:2,RB:1} and {PB:1,LQ:2}, usages recounted.
PatternTable illustrative_table(const std::vector<Transaction>& db) {
    auto table = init_pattern_table(db);
    table.insert(Pattern{parse_itemset("PB:1,LQ:2,RB:1"), 4, 0});
    table.insert(Pattern{parse_itemset("PB:1,LQ:2"), 6, 0});
    return recompute_usages(std::move(table), db);
}

std::size_t usage_of(const PatternTable& table, const char* items) {
    const auto i = table.find(parse_itemset(items));
    REQUIRE(i.has_value());
    return table[*i].usage;
}

// Frozen from an independent evaluation of the code-length sums:
// sum over {6,6,4,2} of -r*log2(r/18).
constexpr double kSingletonTerm = 34.03910001730775;
constexpr double kTol = 1e-9;

}  // namespace

TEST_CASE("init_pattern_table") {
    const auto db = oracle::illustrative_database();
    const auto table = init_pattern_table(db);
    CHECK(table.size() == 4);
    CHECK(table.total_singleton_count() == 18);
    CHECK(table.singleton_counts().at(Item{"PB", Category::NoWaiting}) == 6);
    CHECK(usage_of(table, "PB:1") == 6);
    CHECK(usage_of(table, "LQ:2") == 6);
    CHECK(usage_of(table, "RB:1") == 4);
    CHECK(usage_of(table, "RB:2") == 2);

    const std::vector<Transaction> one = {oracle::row(0, {{"A", 1}, {"B", 1}})};
    const auto t1 = init_pattern_table(one);
    CHECK(t1.total_singleton_count() == 2);
    CHECK(usage_of(t1, "A:1") == 1);
    CHECK(usage_of(t1, "B:1") == 1);

    CHECK_THROWS_AS(init_pattern_table({}), std::invalid_argument);
}

TEST_CASE("pattern table maintenance") {
    const auto db = oracle::illustrative_database();
    auto table = init_pattern_table(db);
    CHECK_THROWS_AS(table.insert(Pattern{parse_itemset("PB:1"), 6, 0}), std::invalid_argument);
    CHECK_THROWS_AS(table.insert(Pattern{parse_itemset("PB:4,LQ:2"), 1, 0}), UnknownItemError);
    const auto pos = table.insert(Pattern{parse_itemset("PB:1,LQ:2"), 6, 0});
    CHECK(pos == 0);
    CHECK_THROWS_AS(table.erase(1), std::invalid_argument);
    table.erase(0);
    CHECK(table.size() == 4);

    // Cover order: size, then support, then items.
    for (std::size_t i = 1; i < table.size(); ++i) CHECK_FALSE(cover_order(table[i], table[i - 1]));
}

TEST_CASE("cover_transaction") {
    const auto db = oracle::illustrative_database();
    const auto table = illustrative_table(db);

    const auto c1 = cover_transaction(db[0], table);
    REQUIRE(c1.parts.size() == 1);
    CHECK(table[c1.parts[0]].items == parse_itemset("PB:1,LQ:2,RB:1"));

    const auto c5 = cover_transaction(db[4], table);
    REQUIRE(c5.parts.size() == 2);
    CHECK(table[c5.parts[0]].items == parse_itemset("PB:1,LQ:2"));
    CHECK(table[c5.parts[1]].items == parse_itemset("RB:2"));

    const auto singletons = init_pattern_table(db);
    CHECK(cover_transaction(db[4], singletons).parts.size() == 3);

    const auto unknown = oracle::row(9, {{"PB", 4}, {"LQ", 2}, {"RB", 1}});
    CHECK_THROWS_WITH_AS(cover_transaction(unknown, table), "item 'PB:4' has no singleton in the pattern table",
                         UnknownItemError);
}

TEST_CASE("recompute_usages") {
    const auto db = oracle::illustrative_database();
    const auto table = illustrative_table(db);
    CHECK(usage_of(table, "PB:1,LQ:2,RB:1") == 4);
    CHECK(usage_of(table, "PB:1,LQ:2") == 2);
    CHECK(usage_of(table, "RB:2") == 2);
    CHECK(usage_of(table, "PB:1") == 0);
    CHECK(usage_of(table, "LQ:2") == 0);
    CHECK(usage_of(table, "RB:1") == 0);
    CHECK(table.total_usage() == 8);

    SUBCASE("singleton-only usages equal raw counts") {
        const auto t = recompute_usages(init_pattern_table(db), db);
        for (const auto& p : t.patterns()) CHECK(p.usage == t.singleton_counts().at(p.items.front()));
    }

    SUBCASE("removing a pattern returns its coverage to singletons") {
        std::vector<Transaction> four;
        for (int h = 0; h < 3; ++h) four.push_back(oracle::row(h, {{"A", 1}, {"B", 1}, {"C", 1}}));
        four.push_back(oracle::row(3, {{"A", 1}, {"B", 1}, {"C", 2}}));
        auto t = init_pattern_table(four);
        t.insert(Pattern{parse_itemset("A:1,B:1,C:1"), 3, 0});
        t.insert(Pattern{parse_itemset("A:1,B:1"), 4, 0});
        t = recompute_usages(std::move(t), four);
        CHECK(usage_of(t, "A:1,B:1,C:1") == 3);
        CHECK(usage_of(t, "A:1,B:1") == 1);
        CHECK(usage_of(t, "A:1") == 0);
        CHECK(usage_of(t, "C:2") == 1);

        t.erase(*t.find(parse_itemset("A:1,B:1")));
        t = recompute_usages(std::move(t), four);
        CHECK(usage_of(t, "A:1,B:1,C:1") == 3);
        CHECK(usage_of(t, "A:1") == 1);
        CHECK(usage_of(t, "B:1") == 1);
        CHECK(usage_of(t, "C:2") == 1);
        std::size_t covered = 0;
        for (const auto& p : t.patterns()) covered += p.usage * p.items.size();
        CHECK(covered == 12);
    }
}

TEST_CASE("code lengths on the illustrative table") {
    const auto db = oracle::illustrative_database();
    const auto table = illustrative_table(db);

    CHECK(std::abs(pattern_code_length(table[*table.find(parse_itemset("PB:1,LQ:2,RB:1"))], table) - 1.0) < kTol);
    CHECK(std::abs(pattern_code_length(table[*table.find(parse_itemset("PB:1,LQ:2"))], table) - 2.0) < kTol);
    CHECK(std::abs(pattern_code_length(table[*table.find(parse_itemset("RB:2"))], table) - 2.0) < kTol);
    CHECK_THROWS_AS(pattern_code_length(table[*table.find(parse_itemset("PB:1"))], table), std::domain_error);

    CHECK(std::abs(transaction_code_length(db[0], table) - 1.0) < kTol);
    CHECK(std::abs(transaction_code_length(db[4], table) - 4.0) < kTol);
    CHECK(std::abs(database_length(db, table) - 12.0) < kTol);
    CHECK(database_length({}, table) == 0.0);

    CHECK(std::abs(table_length(table) - (5.0 + kSingletonTerm)) < kTol);
    CHECK(std::abs(total_length(db, table) - (17.0 + kSingletonTerm)) < kTol);
    CHECK(std::abs(total_length(db, table) - oracle::reference_total_length(
                                                 db, {{parse_itemset("PB:1,LQ:2,RB:1"), 4}, {parse_itemset("PB:1,LQ:2"), 6}})) < kTol);
}

TEST_CASE("code length degenerate cases") {
    SUBCASE("single pattern in use costs nothing") {
        std::vector<Transaction> db(5, oracle::row(0, {{"A", 1}, {"B", 1}}));
        auto t = init_pattern_table(db);
        t.insert(Pattern{parse_itemset("A:1,B:1"), 5, 0});
        t = recompute_usages(std::move(t), db);
        CHECK(pattern_code_length(t[0], t) == 0.0);
        CHECK(transaction_code_length(db[0], t) == 0.0);
    }
    SUBCASE("uniform singletons on a one-row database") {
        const std::vector<Transaction> db = {oracle::row(0, {{"A", 1}, {"B", 2}, {"C", 3}})};
        const auto t = init_pattern_table(db);
        CHECK(std::abs(transaction_code_length(db[0], t) - 3.0 * std::log2(3.0)) < kTol);
    }
    SUBCASE("one repeated item has no singleton cost") {
        std::vector<Transaction> db(4, oracle::row(0, {{"A", 2}}));
        const auto t = init_pattern_table(db);
        CHECK(table_length(t) == 0.0);
    }
    SUBCASE("singleton table total equals compress initial length") {
        const auto db = oracle::illustrative_database();
        const auto t = init_pattern_table(db);
        CHECK(total_length(db, t) == compress(db, SupportThreshold::absolute(2)).initial_length);
    }
}

TEST_CASE("doubling the database doubles its length") {
    auto db = oracle::illustrative_database();
    auto doubled = db;
    doubled.insert(doubled.end(), db.begin(), db.end());
    const auto t = illustrative_table(doubled);
    CHECK(usage_of(t, "PB:1,LQ:2,RB:1") == 8);
    CHECK(std::abs(database_length(doubled, t) - 24.0) < kTol);
    CHECK(std::abs(transaction_code_length(db[4], t) - 4.0) < kTol);
}

TEST_CASE("compress accepts a dominating pattern") {
    std::vector<Transaction> db;
    for (int h = 0; h < 20; ++h) db.push_back(oracle::row(h, {{"A", 1}, {"B", 1}}));
    const auto r = compress(db, SupportThreshold::absolute(2));
    REQUIRE(r.log.size() == 1);
    CHECK(r.log[0].accepted);
    CHECK(r.table.find(parse_itemset("A:1,B:1")).has_value());
    // Singletons: 40 bits of data + 2 bits of codes + 40 bits of counts; then
    // one free code per row and only the count term remains.
    CHECK(std::abs(r.initial_length - 82.0) < kTol);
    CHECK(std::abs(r.final_length - 40.0) < kTol);
}

TEST_CASE("compress without candidates keeps the singleton table") {
    std::vector<Transaction> db;
    for (int h = 0; h < 4; ++h) db.push_back(oracle::row(h, {{"A", h + 1}, {"B", 4 - h}}));
    const auto r = compress(db, SupportThreshold::absolute(2));
    CHECK(r.log.empty());
    CHECK(r.table.size() == 8);
    CHECK(r.final_length == r.initial_length);
    CHECK_THROWS_AS(compress({}, SupportThreshold::absolute(2)), std::invalid_argument);
}

TEST_CASE("compress on the illustrative database") {
    const auto db = oracle::illustrative_database();
    const auto r = compress(db, SupportThreshold::absolute(2));
    CHECK(r.candidates.size() == 7);
    REQUIRE(r.log.size() == 7);
    CHECK(r.log[0].candidate == parse_itemset("PB:1,LQ:2,RB:1"));
    CHECK(r.log[0].accepted);
    CHECK(r.table.find(parse_itemset("PB:1,LQ:2,RB:1")).has_value());
    CHECK(r.final_length < r.initial_length);

    std::vector<oracle::RefPattern> candidates;
    for (const auto& c : r.candidates) candidates.push_back({c.items, c.support});
    const double best = oracle::exhaustive_best_length(db, candidates);
    CHECK(r.final_length >= best - kTol);
    MESSAGE("greedy L = " << r.final_length << ", exhaustive L* = " << best << ", {PB:1,LQ:2} kept: "
                          << r.table.find(parse_itemset("PB:1,LQ:2")).has_value());

    double previous = r.initial_length;
    for (const auto& rec : r.log) {
        if (rec.accepted) {
            CHECK(rec.length < previous);
            previous = rec.length;
        } else {
            CHECK(rec.length >= previous);
        }
    }
    CHECK(previous == r.final_length);
    CHECK(std::abs(total_length(db, r.table) - r.final_length) < kTol);
}
