#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "ransomtrace/expand.hpp"
#include "tests/support/oracles.hpp"
#include "tests/support/universe.hpp"

using namespace ransomtrace;
using namespace rt_test;

namespace {

AddressId addr_of(char c) { return AddressId::parse("1" + std::string(25, c)); }

TxRecord make_tx(char hash_char, const std::vector<AddressId>& ins,
                 const std::vector<AddressId>& outs, const std::string& date,
                 const std::string& time = "12:00:00") {
    TxRecord tx;
    tx.hash = std::string(64, hash_char);
    for (const AddressId& a : ins) tx.inputs.emplace_back(a, Satoshi::from_value(100000));
    for (const AddressId& a : outs) tx.outputs.emplace_back(a, Satoshi::from_value(40000));
    tx.gmt_date = Date::parse(date);
    tx.gmt_time = TimeOfDay::parse(time);
    tx.is_coinbase = ins.empty();
    return tx;
}

std::set<AddressId> member_addresses(const ClusterSet& cluster) {
    std::set<AddressId> out;
    for (const ClusterMember& m : cluster.members) out.insert(m.address);
    return out;
}

// The hand-traced universe: history gives M prior existence, tx1 spends
// {X,Y} into {M, N-fresh}, tx2 spends {N,Z}.
TxUniverse hand_traced_universe() {
    TxUniverse u;
    u.txs.push_back(make_tx('0', {addr_of('7')}, {addr_of('m'), addr_of('x'), addr_of('y'),
                                                  addr_of('z')},
                            "2013-09-01"));
    u.txs.push_back(make_tx('1', {addr_of('x'), addr_of('y')}, {addr_of('m'), addr_of('n')},
                            "2013-09-10"));
    u.txs.push_back(make_tx('2', {addr_of('n'), addr_of('z')}, {addr_of('m')}, "2013-09-20"));
    return u;
}

}  // namespace

TEST_CASE("multi_input_addresses collapses duplicates") {
    TxRecord tx = make_tx('a', {addr_of('a'), addr_of('b'), addr_of('a')}, {addr_of('c')},
                          "2013-10-10");
    auto inputs = multi_input_addresses(tx);
    CHECK(inputs == std::set<AddressId>{addr_of('a'), addr_of('b')});

    TxRecord single = make_tx('b', {addr_of('a')}, {addr_of('c')}, "2013-10-10");
    CHECK(multi_input_addresses(single) == std::set<AddressId>{addr_of('a')});

    TxRecord coinbase = make_tx('c', {}, {addr_of('c')}, "2013-10-10");
    CHECK_THROWS_AS(multi_input_addresses(coinbase), CoinbaseInput);
}

TEST_CASE("detect_shadow finds the single fresh output") {
    auto seen_only = [&](const AddressId& seen) {
        return [seen](const AddressId& a) { return a == seen; };
    };

    TxRecord two_out = make_tx('a', {addr_of('a')}, {addr_of('d'), addr_of('c')}, "2013-10-10");
    auto shadow = detect_shadow(two_out, seen_only(addr_of('d')));
    REQUIRE(shadow.has_value());
    CHECK(*shadow == addr_of('c'));

    SUBCASE("two fresh outputs are ambiguous") {
        CHECK(detect_shadow(two_out, [](const AddressId&) { return false; }) == std::nullopt);
    }
    SUBCASE("two seen outputs do not match") {
        CHECK(detect_shadow(two_out, [](const AddressId&) { return true; }) == std::nullopt);
    }
    SUBCASE("single output or three outputs do not match") {
        TxRecord one = make_tx('b', {addr_of('a')}, {addr_of('d')}, "2013-10-10");
        CHECK(detect_shadow(one, seen_only(addr_of('d'))) == std::nullopt);
        TxRecord three = make_tx('c', {addr_of('a')}, {addr_of('d'), addr_of('e'), addr_of('f')},
                                 "2013-10-10");
        CHECK(detect_shadow(three, seen_only(addr_of('d'))) == std::nullopt);
    }
    SUBCASE("self-change disqualifies the transaction") {
        TxRecord self = make_tx('d', {addr_of('a')}, {addr_of('a'), addr_of('c')}, "2013-10-10");
        CHECK(detect_shadow(self, seen_only(addr_of('a'))) == std::nullopt);
    }
    SUBCASE("duplicate outputs to the same two addresses still count as two") {
        TxRecord dup = make_tx('e', {addr_of('a')}, {addr_of('d'), addr_of('c'), addr_of('d')},
                               "2013-10-10");
        auto s = detect_shadow(dup, seen_only(addr_of('d')));
        REQUIRE(s.has_value());
        CHECK(*s == addr_of('c'));
    }
}

TEST_CASE("expansion reaches an immediate fixed point with no spends") {
    TxUniverse u;
    u.txs.push_back(make_tx('0', {addr_of('q')}, {addr_of('x')}, "2013-09-01"));
    UniverseProvider provider(u);
    ClusterSet cluster = expand({addr_of('x')}, provider);
    REQUIRE(cluster.members.size() == 1);
    CHECK(cluster.members[0].address == addr_of('x'));
    CHECK(cluster.members[0].provenance == Provenance::seed);
    CHECK(cluster.members[0].discovery_round == 0);
}

TEST_CASE("hand-traced expansion matches the worked example") {
    UniverseProvider provider(hand_traced_universe());
    ClusterSet cluster = expand({addr_of('x')}, provider, {}, "demo");

    REQUIRE(cluster.members.size() == 4);
    CHECK(member_addresses(cluster) ==
          std::set<AddressId>{addr_of('x'), addr_of('y'), addr_of('n'), addr_of('z')});

    auto find = [&](const AddressId& a) {
        return *std::find_if(cluster.members.begin(), cluster.members.end(),
                             [&](const ClusterMember& m) { return m.address == a; });
    };
    CHECK(find(addr_of('x')).provenance == Provenance::seed);
    CHECK(find(addr_of('x')).discovery_round == 0);
    CHECK(find(addr_of('y')).provenance == Provenance::multi_input);
    CHECK(find(addr_of('y')).discovery_round == 1);
    CHECK(find(addr_of('n')).provenance == Provenance::shadow);
    CHECK(find(addr_of('n')).discovery_round == 1);
    CHECK(find(addr_of('z')).provenance == Provenance::multi_input);
    CHECK(find(addr_of('z')).discovery_round == 2);

    // M is only a payee and must stay out.
    CHECK(!cluster.contains(addr_of('m')));
}

TEST_CASE("expansion is cut short by max_rounds") {
    UniverseProvider provider(hand_traced_universe());
    ExpansionConfig config;
    config.max_rounds = 1;
    ClusterSet cluster = expand({addr_of('x')}, provider, config);
    CHECK(member_addresses(cluster) ==
          std::set<AddressId>{addr_of('x'), addr_of('y'), addr_of('n')});
}

TEST_CASE("max_cluster_size aborts carrying the partial result") {
    UniverseProvider provider(hand_traced_universe());
    ExpansionConfig config;
    config.max_cluster_size = 2;
    try {
        expand({addr_of('x')}, provider, config);
        FAIL("expected ClusterSizeExceeded");
    } catch (const ClusterSizeExceeded& e) {
        CHECK(e.partial().members.size() >= 3);
        CHECK(e.partial().contains(addr_of('x')));
        CHECK(e.partial().contains(addr_of('y')));
    }
}

TEST_CASE("shadow detection can be disabled") {
    UniverseProvider provider(hand_traced_universe());
    ExpansionConfig config;
    config.shadow_detection = false;
    ClusterSet cluster = expand({addr_of('x')}, provider, config);
    // Without the change heuristic, N is never attributed, so Z stays
    // unreachable as well.
    CHECK(member_addresses(cluster) == std::set<AddressId>{addr_of('x'), addr_of('y')});
}

TEST_CASE("mixer-shaped transactions pool users unless capped") {
    // Ten strangers pool one transaction; one of them is our seed.
    TxUniverse u;
    std::vector<AddressId> strangers;
    for (char c = 'a'; c < 'k'; ++c) strangers.push_back(addr_of(c));
    u.txs.push_back(make_tx('0', {addr_of('q')}, strangers, "2013-09-01"));
    u.txs.push_back(make_tx('1', strangers, {addr_of('p'), addr_of('r')}, "2013-09-02"));
    UniverseProvider provider(u);

    ClusterSet contaminated = expand({strangers[0]}, provider);
    CHECK(contaminated.members.size() >= strangers.size());

    ExpansionConfig capped;
    capped.max_inputs_per_tx = 5;
    ClusterSet bounded = expand({strangers[0]}, provider, capped);
    CHECK(bounded.members.size() < contaminated.members.size());
    // The oracle with the same cap agrees.
    CHECK(member_addresses(bounded) == oracle_expand(u, {strangers[0]}, true, 5));
}

TEST_CASE("random universes match the naive transitive-closure oracle") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        ClusterFixture fixture = make_cluster_fixture(seed);
        UniverseProvider provider(fixture.universe);
        ClusterSet cluster = expand(fixture.seeds, provider);
        CHECK(member_addresses(cluster) == oracle_expand(fixture.universe, fixture.seeds));
    }
}

TEST_CASE("expansion is a fixed point and monotone across rounds") {
    ClusterFixture fixture = make_cluster_fixture(77);
    UniverseProvider provider(fixture.universe);
    ClusterSet cluster = expand(fixture.seeds, provider);

    // Re-expanding the result adds nothing.
    ClusterSet again = expand(cluster.addresses(), provider);
    CHECK(member_addresses(again) == member_addresses(cluster));

    // Rounds are nested: expanding with max_rounds = r reproduces the
    // members discovered in rounds <= r.
    int final_round = 0;
    for (const ClusterMember& m : cluster.members)
        final_round = std::max(final_round, m.discovery_round);
    for (int r = 1; r <= final_round; ++r) {
        ExpansionConfig config;
        config.max_rounds = r;
        ClusterSet partial = expand(fixture.seeds, provider, config);
        std::set<AddressId> expected;
        for (const ClusterMember& m : cluster.members)
            if (m.discovery_round <= r) expected.insert(m.address);
        CHECK(member_addresses(partial) == expected);
    }
}

TEST_CASE("membership and provenance counts ignore provider enumeration order") {
    ClusterFixture fixture = make_cluster_fixture(2718);

    auto run = [&](const TxUniverse& u) {
        UniverseProvider provider(u);
        return expand(fixture.seeds, provider);
    };
    ClusterSet forward = run(fixture.universe);

    TxUniverse reversed = fixture.universe;
    std::reverse(reversed.txs.begin(), reversed.txs.end());
    ClusterSet backward = run(reversed);

    CHECK(member_addresses(forward) == member_addresses(backward));
    auto count = [](const ClusterSet& c, Provenance p) {
        return std::count_if(c.members.begin(), c.members.end(),
                             [&](const ClusterMember& m) { return m.provenance == p; });
    };
    for (auto p : {Provenance::seed, Provenance::multi_input, Provenance::shadow})
        CHECK(count(forward, p) == count(backward, p));
}

TEST_CASE("empty seed set is rejected") {
    UniverseProvider provider(TxUniverse{});
    CHECK_THROWS_AS(expand({}, provider), Error);
}

TEST_CASE("concurrent prefetching does not change the result") {
    ClusterFixture fixture = make_cluster_fixture(909);
    UniverseProvider provider(fixture.universe);
    ClusterSet sequential = expand(fixture.seeds, provider);

    ExpansionConfig parallel;
    parallel.parallelism = 4;
    ClusterSet concurrent = expand(fixture.seeds, provider, parallel);
    CHECK(member_addresses(sequential) == member_addresses(concurrent));
    CHECK(sequential.members.size() == concurrent.members.size());
    for (std::size_t i = 0; i < sequential.members.size(); ++i) {
        CHECK(sequential.members[i] == concurrent.members[i]);
    }
}
