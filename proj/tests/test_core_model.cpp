#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ransomtrace/address.hpp"
#include "ransomtrace/calendar.hpp"
#include "ransomtrace/records.hpp"
#include "ransomtrace/satoshi.hpp"
#include "ransomtrace/usd.hpp"

using namespace ransomtrace;

TEST_CASE("address parsing accepts well-formed addresses") {
    AddressId a = parse_address("12t9YDPgwueZ9NyMgw519p7AA8isjr6SMw");
    CHECK(a.text() == "12t9YDPgwueZ9NyMgw519p7AA8isjr6SMw");
    CHECK_NOTHROW(parse_address("3NQoq5MVPfEMw12gB4a2c1G61mRZyMymsB"));
    CHECK_NOTHROW(parse_address(std::string(26, '1')));  // boundary length
    CHECK_NOTHROW(parse_address(std::string(35, '1')));
}

TEST_CASE("address parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_address("0abc"), MalformedAddress);
    CHECK_THROWS_AS(parse_address(std::string(25, '1')), MalformedAddress);
    CHECK_THROWS_AS(parse_address(std::string(36, '1')), MalformedAddress);
    CHECK_THROWS_AS(parse_address("2" + std::string(30, 'a')), MalformedAddress);
    CHECK_THROWS_AS(parse_address(""), MalformedAddress);
}

TEST_CASE("address round-trips through render") {
    std::string text = "1HFLn7JP7FZrufvNKkQPEfAWGjKUdFZEmy";
    CHECK(parse_address(parse_address(text).text()).text() == text);
}

TEST_CASE("btc display renders 8 fractional digits") {
    CHECK(Satoshi::from_value(200000000).to_btc() == "2.00000000");
    CHECK(Satoshi::from_value(0).to_btc() == "0.00000000");
    CHECK(Satoshi::from_value(140375480000).to_btc() == "1403.75480000");
    CHECK(Satoshi::from_value(1).to_btc() == "0.00000001");
}

TEST_CASE("btc display round-trips through parsing") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        std::int64_t v = std::uniform_int_distribution<std::int64_t>(0, 21'000'000LL *
                                                                            100'000'000LL)(rng);
        Satoshi s = Satoshi::from_value(v);
        CHECK(Satoshi::parse_btc(s.to_btc()) == s);
    }
    CHECK(Satoshi::parse_btc("2") == Satoshi::from_value(200000000));
    CHECK(Satoshi::parse_btc("0.3") == Satoshi::from_value(30000000));
    CHECK(Satoshi::parse_btc("1403.7548") == Satoshi::from_value(140375480000));
}

TEST_CASE("btc table display rounds half-up") {
    CHECK(Satoshi::from_value(140375480000).to_btc(4) == "1403.7548");
    CHECK(Satoshi::from_value(123456789).to_btc(4) == "1.2346");
    CHECK(Satoshi::from_value(123450000).to_btc(4) == "1.2345");
    CHECK(Satoshi::from_value(5000).to_btc(4) == "0.0001");  // exact half rounds up
    CHECK(Satoshi::from_value(4999).to_btc(4) == "0.0000");
}

TEST_CASE("satoshi arithmetic is exact and loss-free") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        auto a = Satoshi::from_value(std::uniform_int_distribution<std::int64_t>(0, 1e15)(rng));
        auto b = Satoshi::from_value(std::uniform_int_distribution<std::int64_t>(0, 1e15)(rng));
        CHECK((a + b) - b == a);
    }
    CHECK_THROWS_AS(Satoshi::from_value(-1), Error);
    CHECK_THROWS_AS(Satoshi::from_value(1) - Satoshi::from_value(2), Error);
    CHECK_THROWS_AS(Satoshi::parse_btc("1.123456789"), Error);  // 9 fractional digits
}

TEST_CASE("usd amounts parse and display with half-up rounding") {
    CHECK(UsdAmount::parse("449274.97").display() == "449274.97");
    CHECK(UsdAmount::parse("300").display() == "300.00");
    CHECK(UsdAmount::parse("0.005").display() == "0.01");
    CHECK(UsdAmount::parse("0.004999").display() == "0.00");
    CHECK(UsdAmount::parse("123.456789").to_string(6) == "123.456789");
    CHECK_THROWS_AS(UsdAmount::parse("1.1234567890123"), Error);  // 13 digits
    CHECK_THROWS_AS(UsdAmount::parse("-3"), Error);
}

TEST_CASE("usd addition is decimal-exact") {
    UsdAmount a = UsdAmount::parse("0.000001");
    UsdAmount total;
    for (int i = 0; i < 1'000'000; ++i) total += a;
    CHECK(total == UsdAmount::parse("1"));
}

TEST_CASE("dates validate and order") {
    Date d = Date::parse("2013-10-10");
    CHECK(d.to_string() == "2013-10-10");
    CHECK(Date::parse("2016-02-29") == Date::from_ymd(2016, 2, 29));
    CHECK_THROWS_AS(Date::parse("2015-02-29"), Error);
    CHECK_THROWS_AS(Date::parse("2013-13-01"), Error);
    CHECK_THROWS_AS(Date::parse("2013/10/10"), Error);
    CHECK(Date::parse("2013-09-05") < Date::parse("2013-11-11"));
    CHECK(Date::parse("2013-12-31").next_day() == Date::parse("2014-01-01"));
}

TEST_CASE("times validate and order") {
    CHECK(TimeOfDay::parse("23:59:59").to_string() == "23:59:59");
    CHECK_THROWS_AS(TimeOfDay::parse("24:00:00"), Error);
    CHECK_THROWS_AS(TimeOfDay::parse("12:60:00"), Error);
    CHECK(TimeOfDay::parse("01:00:00") < TimeOfDay::parse("01:00:01"));
}

TEST_CASE("moments order by date, time, then hash") {
    Moment a{Date::parse("2013-10-10"), TimeOfDay::parse("10:00:00"), std::string(64, 'a')};
    Moment b{Date::parse("2013-10-10"), TimeOfDay::parse("10:00:00"), std::string(64, 'b')};
    Moment c{Date::parse("2013-10-10"), TimeOfDay::parse("10:00:01"), std::string(64, 'a')};
    CHECK(a < b);
    CHECK(b < c);
}

TEST_CASE("daily price ordering is enforced") {
    Date d = Date::parse("2013-10-10");
    DailyPrice ok{d, UsdAmount::parse("118"), UsdAmount::parse("123"), UsdAmount::parse("127")};
    CHECK_NOTHROW(ok.validate());
    DailyPrice bad{d, UsdAmount::parse("118"), UsdAmount::parse("130"), UsdAmount::parse("127")};
    CHECK_THROWS_AS(bad.validate(), OrderingViolation);
}

TEST_CASE("tx records enforce the coinbase invariant") {
    TxRecord tx;
    tx.hash = std::string(64, 'a');
    tx.gmt_date = Date::parse("2013-10-10");
    tx.is_coinbase = true;
    CHECK_NOTHROW(tx.validate());
    tx.is_coinbase = false;
    CHECK_THROWS_AS(tx.validate(), Error);
    tx.inputs.emplace_back(parse_address(std::string(26, '1')), Satoshi::from_value(5));
    CHECK_NOTHROW(tx.validate());
    tx.hash = "xyz";
    CHECK_THROWS_AS(tx.validate(), Error);
}

TEST_CASE("ransom rules validate their window and amount") {
    RansomRule rule{"2 BTC", Denomination::btc, Satoshi::parse_btc("2"),
                    Date::parse("2013-09-05"), Date::parse("2013-11-11")};
    CHECK_NOTHROW(rule.validate());
    CHECK(rule.active_on(Date::parse("2013-10-10")));
    CHECK(rule.active_on(Date::parse("2013-09-05")));
    CHECK(rule.active_on(Date::parse("2013-11-11")));
    CHECK(!rule.active_on(Date::parse("2013-11-12")));

    rule.end_date = Date::parse("2013-09-04");
    CHECK_THROWS_AS(rule.validate(), Error);
    rule.end_date = Date::parse("2013-11-11");
    rule.amount = Satoshi{};
    CHECK_THROWS_AS(rule.validate(), Error);
}

TEST_CASE("enum labels round-trip") {
    for (auto p : {Provenance::seed, Provenance::multi_input, Provenance::shadow})
        CHECK(provenance_from_string(to_string(p)) == p);
    for (auto b : {MatchBranch::btc_exact, MatchBranch::btc_minus_fee, MatchBranch::usd_band,
                   MatchBranch::usd_band_minus_fee})
        CHECK(match_branch_from_string(to_string(b)) == b);
}
