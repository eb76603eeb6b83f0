#include "treecount/oracle.hpp"

#include <doctest.h>

using namespace treecount;

namespace {

std::vector<std::vector<std::int64_t>> internal_lists(const OracleResult& result) {
    std::vector<std::vector<std::int64_t>> out;
    out.reserve(result.profiles.size());
    for (const auto& profile : result.profiles)
        out.push_back(profile.internal());
    return out;
}

} // namespace

TEST_CASE("binary enumeration matches hand enumeration") {
    auto r4 = enumerate_profiles(BranchingSchedule::n_ary(2), 4);
    CHECK(r4.count == 2);
    CHECK(internal_lists(r4) == std::vector<std::vector<std::int64_t>>{{1, 1, 1}, {1, 2}});

    auto r5 = enumerate_profiles(BranchingSchedule::n_ary(2), 5);
    CHECK(r5.count == 3);
    CHECK(internal_lists(r5) ==
          std::vector<std::vector<std::int64_t>>{{1, 1, 1, 1}, {1, 1, 2}, {1, 2, 1}});
    std::vector<HuffmanSequence> seqs;
    for (const auto& profile : r5.profiles)
        seqs.push_back(profile_to_sequence(profile));
    CHECK(seqs ==
          std::vector<HuffmanSequence>{{1, 2, 3, 4, 4}, {1, 3, 3, 3, 3}, {2, 2, 2, 3, 3}});

    CHECK(count_oracle(BranchingSchedule::n_ary(2), 2) == 1);
    CHECK(count_oracle(BranchingSchedule::n_ary(2), 12) == 159);
}

TEST_CASE("congruence obstruction for uniform schedules") {
    CHECK(count_oracle(BranchingSchedule::n_ary(3), 4) == 0);
    CHECK(count_oracle(BranchingSchedule::n_ary(3), 5) == 1);
    CHECK(count_oracle(BranchingSchedule::n_ary(4), 6) == 0);
    for (std::int64_t q = 2; q <= 16; ++q)
        if ((q - 1) % 2 != 0) CHECK(count_oracle(BranchingSchedule::n_ary(3), q) == 0);
}

TEST_CASE("by-top classification") {
    auto by_top = count_by_top_and_parity(BranchingSchedule::n_ary(2), 6);
    std::map<TopClass, BigInt> want{{{2, Parity::even}, 2},
                                    {{2, Parity::odd}, 1},
                                    {{4, Parity::even}, 1},
                                    {{4, Parity::odd}, 1}};
    CHECK(by_top == want);

    CHECK(count_by_top_and_parity(BranchingSchedule::binary_ternary(), 2) ==
          std::map<TopClass, BigInt>{{{2, Parity::odd}, 1}});
}

TEST_CASE("binary-ternary enumeration") {
    auto r8 = enumerate_profiles(BranchingSchedule::binary_ternary(), 8);
    CHECK(r8.count == 3);
    CHECK(internal_lists(r8) ==
          std::vector<std::vector<std::int64_t>>{{1, 1, 1, 1, 1}, {1, 1, 2, 1}, {1, 2, 2}});
    std::map<TopClass, BigInt> want{
        {{2, Parity::odd}, 1}, {{3, Parity::even}, 1}, {{4, Parity::odd}, 1}};
    CHECK(r8.by_top == want);

    // the profile with 4 leaves on odd top level 3
    bool found = false;
    for (const auto& profile : r8.profiles)
        if (profile.internal() == std::vector<std::int64_t>{1, 2, 2}) {
            found = true;
            CHECK(profile.top_leaf_count() == 4);
            CHECK(profile.top_parity() == Parity::odd);
        }
    CHECK(found);
}

TEST_CASE("every enumerated profile validates and has p = b * s") {
    for (auto schedule : {BranchingSchedule::n_ary(2), BranchingSchedule::n_ary(3),
                          BranchingSchedule::binary_ternary()}) {
        for (std::int64_t q = 2; q <= 12; ++q) {
            auto result = enumerate_profiles(schedule, q);
            BigInt total = 0;
            for (const auto& [top, cnt] : result.by_top) total += cnt;
            CHECK(total == result.count);
            CHECK(result.count == BigInt(result.profiles.size()));
            for (const auto& profile : result.profiles) {
                CHECK(validate_profile(profile).empty());
                CHECK(kraft_sum(profile) == Rational(1));
                int top_level = profile.levels();
                CHECK(profile.top_leaf_count() ==
                      profile.top_internal() * schedule.factor(top_level - 1));
            }
        }
    }
}

TEST_CASE("truncating the top level yields a valid smaller profile") {
    for (auto schedule : {BranchingSchedule::n_ary(2), BranchingSchedule::binary_ternary()}) {
        auto result = enumerate_profiles(schedule, 10);
        for (const auto& profile : result.profiles) {
            if (profile.levels() < 2) continue;
            auto internal = profile.internal();
            std::int64_t s = internal.back();
            int b = schedule.factor(profile.levels() - 1);
            internal.pop_back();
            LevelProfile parent(schedule, internal);
            CHECK(validate_profile(parent).empty());
            CHECK(parent.leaf_count() == profile.leaf_count() - s * (b - 1));
        }
    }
}

TEST_CASE("degenerate tree appears only on request") {
    auto without = enumerate_profiles(BranchingSchedule::n_ary(2), 1);
    CHECK(without.count == 0);
    CHECK(without.profiles.empty());

    OracleOptions opt;
    opt.include_degenerate = true;
    auto with = enumerate_profiles(BranchingSchedule::n_ary(2), 1, opt);
    CHECK(with.count == 1);
    REQUIRE(with.profiles.size() == 1);
    CHECK(with.profiles[0].degenerate());
    CHECK(with.by_top == std::map<TopClass, BigInt>{{{1, Parity::even}, 1}});

    CHECK_THROWS_AS(enumerate_profiles(BranchingSchedule::n_ary(2), 0), std::domain_error);
}

TEST_CASE("output is identical for any thread count") {
    for (auto schedule : {BranchingSchedule::n_ary(2), BranchingSchedule::binary_ternary()}) {
        OracleOptions base;
        auto reference = enumerate_profiles(schedule, 15, base);
        for (int threads : {2, 3, 4, 8}) {
            OracleOptions opt;
            opt.threads = threads;
            auto parallel = enumerate_profiles(schedule, 15, opt);
            CHECK(parallel.count == reference.count);
            CHECK(parallel.by_top == reference.by_top);
            CHECK(parallel.profiles == reference.profiles);
        }
    }
}
