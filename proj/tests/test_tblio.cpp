#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ctt/chartab.hpp"
#include "ctt/errors.hpp"
#include "ctt/permgroup.hpp"
#include "ctt/tblio.hpp"
#include "doctest.h"

using ctt::BigInt;
using ctt::parse_error;
using ctt::permgroup::Permutation;
using ctt::cyclo::Cyclo;
using namespace ctt::tblio;

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::filesystem::path fixtures_dir() { return CTT_FIXTURES_DIR; }

ctt::chartab::CharacterTable table_of(const std::string& name, int degree,
                                      std::vector<Permutation> gens) {
    ctt::permgroup::PermutationGroup g(degree, std::move(gens));
    auto t = ctt::chartab::compute_character_table(g, ctt::chartab::ComputeOptions{});
    t.group_name = name;
    return t;
}

Permutation cyc(int degree, const std::vector<std::vector<int>>& cycles) {
    return Permutation::from_cycles(degree, cycles);
}

}  // namespace

TEST_CASE("serialized S3 table is the canonical golden document") {
    const auto t = table_of("S3", 3, {cyc(3, {{0, 1}}), cyc(3, {{0, 1, 2}})});
    const std::string expected =
        "FORMAT 1\n"
        "NAME S3\n"
        "ORDER 6\n"
        "NCLASSES 3\n"
        "SIZES 1 3 2\n"
        "ORDERS 1 2 3\n"
        "POWERMAP 2: 1 1 3\n"
        "POWERMAP 3: 1 2 1\n"
        "CHARACTERS\n"
        "1 1 1\n"
        "1 -1 1\n"
        "2 0 -1\n";
    CHECK(serialize_table(t) == expected);
}

TEST_CASE("round-trip identity on computed tables") {
    std::vector<ctt::chartab::CharacterTable> tables;
    tables.push_back(table_of("C2", 2, {cyc(2, {{0, 1}})}));
    tables.push_back(table_of("C3", 3, {cyc(3, {{0, 1, 2}})}));
    tables.push_back(
        table_of("C7", 7, {cyc(7, {{0, 1, 2, 3, 4, 5, 6}})}));
    tables.push_back(table_of("S3", 3, {cyc(3, {{0, 1}}), cyc(3, {{0, 1, 2}})}));
    tables.push_back(
        table_of("S4", 4, {cyc(4, {{0, 1}}), cyc(4, {{0, 1, 2, 3}})}));
    tables.push_back(table_of(
        "Q8", 8,
        {cyc(8, {{0, 1, 2, 3}, {4, 5, 6, 7}}), cyc(8, {{0, 4, 2, 6}, {1, 7, 3, 5}})}));
    tables.push_back(
        table_of("A5", 5, {cyc(5, {{0, 1, 2}}), cyc(5, {{2, 3, 4}})}));
    tables.push_back(table_of(
        "D12", 6, {cyc(6, {{0, 1, 2, 3, 4, 5}}), cyc(6, {{1, 5}, {2, 4}})}));

    for (const auto& t : tables) {
        CAPTURE(t.group_name);
        const std::string doc = serialize_table(t);
        const auto back = parse_table(doc);
        CHECK(back == t);
        CHECK(serialize_table(back) == doc);  // canonical: byte-stable
    }

    // Distinct tables serialize to distinct bytes.
    for (size_t i = 0; i < tables.size(); ++i)
        for (size_t j = i + 1; j < tables.size(); ++j)
            CHECK(serialize_table(tables[i]) != serialize_table(tables[j]));
}

TEST_CASE("C2 document carries rows 1 1 and 1 -1") {
    const std::string doc = serialize_table(table_of("C2", 2, {cyc(2, {{0, 1}})}));
    CHECK(doc.find("1 1\n") != std::string::npos);
    CHECK(doc.find("1 -1\n") != std::string::npos);
}

TEST_CASE("C5 document uses E(5) syntax") {
    const std::string doc =
        serialize_table(table_of("C5", 5, {cyc(5, {{0, 1, 2, 3, 4}})}));
    CHECK(doc.find("E(5)") != std::string::npos);
    CHECK(doc.find("E(5)^2") != std::string::npos);
    CHECK(doc.find("E(5)^3") != std::string::npos);
}

TEST_CASE("value expressions parse with canonical reduction") {
    CHECK(parse_value("1+E(3)+E(3)^2") == Cyclo(0));  // vanishing sum
    CHECK(parse_value("0") == Cyclo(0));
    CHECK(parse_value("-3") == Cyclo(-3));
    CHECK(parse_value("5/3") == Cyclo(ctt::BigRat(5, 3)));
    CHECK(parse_value("E(4)") == Cyclo::root_of_unity(4));
    CHECK(parse_value("-E(4)") == -Cyclo::root_of_unity(4));
    CHECK(parse_value("2*E(7)^3") ==
          Cyclo(2) * Cyclo::root_of_unity(7, 3));
    CHECK(parse_value("1/2*E(8)-1/2*E(8)^3") ==
          Cyclo(ctt::BigRat(1, 2)) * Cyclo::root_of_unity(8) -
              Cyclo(ctt::BigRat(1, 2)) * Cyclo::root_of_unity(8, 3));
    CHECK(parse_value("E(6)") == Cyclo::root_of_unity(6));  // conductor drops to 3
    CHECK(parse_value("E(5)^-1") == Cyclo::root_of_unity(5, 4));
    CHECK(parse_value("E(12)^14") == Cyclo::root_of_unity(12, 2));

    // Serializing any parsed value re-parses to the same element.
    for (const char* s : {"1+E(3)", "-2/3*E(7)^5+E(7)", "E(8)+E(8)^3", "4"}) {
        const Cyclo v = parse_value(s);
        CHECK(parse_value(v.str()) == v);
    }

    CHECK_THROWS_AS(parse_value(""), parse_error);
    CHECK_THROWS_AS(parse_value("+1"), parse_error);
    CHECK_THROWS_AS(parse_value("1+"), parse_error);
    CHECK_THROWS_AS(parse_value("1++2"), parse_error);
    CHECK_THROWS_AS(parse_value("E(0)"), parse_error);
    CHECK_THROWS_AS(parse_value("E(3"), parse_error);
    CHECK_THROWS_AS(parse_value("E(3)^"), parse_error);
    CHECK_THROWS_AS(parse_value("2/0"), parse_error);
    CHECK_THROWS_AS(parse_value("x"), parse_error);
    CHECK_THROWS_AS(parse_value("1*"), parse_error);
    CHECK_THROWS_AS(parse_value("1*2"), parse_error);  // '*' must introduce a root
}

TEST_CASE("comments, blank lines, and extra spacing are accepted") {
    const std::string doc =
        "# character table of the symmetric group on three letters\n"
        "FORMAT 1\n"
        "\n"
        "NAME   S3\n"
        "ORDER 6\n"
        "  # indented comment\n"
        "NCLASSES 3\n"
        "SIZES   1  3  2\n"
        "ORDERS 1 2 3\n"
        "POWERMAP 2: 1 1 3\n"
        "POWERMAP 3: 1 2 1\n"
        "CHARACTERS\n"
        "1 1 1\n"
        "\n"
        "1 -1 1\n"
        "2 0 -1\n"
        "# trailing comment\n";
    const auto t = parse_table(doc);
    CHECK(t.group_name == "S3");
    CHECK(t.order == BigInt(6));
    CHECK(t.class_count() == 3);
    CHECK(t.identity_class == 0);
    CHECK(t.value(2, 2) == Cyclo(-1));
    CHECK(t.power_maps.at(2) == std::vector<int>{0, 0, 2});
}

TEST_CASE("identity class is recovered from the element orders") {
    // Identity listed second: parse must locate it and degrees are read there.
    const std::string doc =
        "FORMAT 1\n"
        "NAME\n"
        "ORDER 2\n"
        "NCLASSES 2\n"
        "SIZES 1 1\n"
        "ORDERS 2 1\n"
        "CHARACTERS\n"
        "1 1\n"
        "-1 1\n";
    const auto t = parse_table(doc);
    CHECK(t.identity_class == 1);
    CHECK(t.group_name == "");
    CHECK(t.degree(1) == BigInt(1));
}

TEST_CASE("anonymous tables serialize with a bare NAME line") {
    auto t = table_of("", 2, {cyc(2, {{0, 1}})});
    const std::string doc = serialize_table(t);
    CHECK(doc.find("NAME\n") != std::string::npos);
    CHECK(parse_table(doc) == t);
}

TEST_CASE("every malformed fixture is rejected with a located diagnostic") {
    const auto dir = fixtures_dir() / "malformed";
    size_t count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".tbl") continue;
        ++count;
        CAPTURE(entry.path().filename().string());
        const std::string text = read_file(entry.path());
        bool threw = false;
        try {
            parse_table(text);
        } catch (const parse_error& e) {
            threw = true;
            CHECK(e.line() >= 1);
            CHECK(e.column() >= 1);
            CHECK(std::string(e.what()).find("line") != std::string::npos);
        }
        CHECK(threw);
    }
    CHECK(count >= 20);
}

TEST_CASE("malformed fixtures report the offending line precisely") {
    const auto dir = fixtures_dir() / "malformed";
    const std::map<std::string, int> expected_line = {
        {"bad_format_version.tbl", 1}, {"missing_format.tbl", 1},
        {"name_two_tokens.tbl", 2},    {"order_not_integer.tbl", 3},
        {"sizes_sum_mismatch.tbl", 5}, {"no_identity_class.tbl", 6},
        {"two_identity_classes.tbl", 6}, {"powermap_not_prime.tbl", 7},
        {"powermap_image_range.tbl", 7}, {"degree_not_integer.tbl", 8},
        {"row_too_short.tbl", 8},      {"trailing_content.tbl", 11},
    };
    for (const auto& [file, line] : expected_line) {
        CAPTURE(file);
        try {
            parse_table(read_file(dir / file));
            FAIL_CHECK("expected a parse_error");
        } catch (const parse_error& e) {
            CHECK(e.line() == line);
        }
    }
    // Column precision spot checks.
    try {
        parse_table(read_file(dir / "bad_format_version.tbl"));
        FAIL_CHECK("expected a parse_error");
    } catch (const parse_error& e) {
        CHECK(e.column() == 8);
    }
    try {
        parse_table(read_file(dir / "powermap_not_prime.tbl"));
        FAIL_CHECK("expected a parse_error");
    } catch (const parse_error& e) {
        CHECK(e.column() == 10);
    }
}

TEST_CASE("group documents round-trip and validate") {
    const std::string doc =
        "FORMAT 1\n"
        "NAME S4\n"
        "DEGREE 4\n"
        "GENERATORS\n"
        "(1,2)\n"
        "(1,2,3,4)\n";
    const auto g = parse_group(doc);
    CHECK(g.name == "S4");
    CHECK(g.degree == 4);
    REQUIRE(g.generators.size() == 2);
    CHECK(g.generators[0] == cyc(4, {{0, 1}}));
    CHECK(g.generators[1] == cyc(4, {{0, 1, 2, 3}}));
    CHECK(serialize_group(g) == doc);

    // Identity generator spelled "()".
    const auto trivial = parse_group(
        "FORMAT 1\nNAME Z1\nDEGREE 3\nGENERATORS\n()\n");
    REQUIRE(trivial.generators.size() == 1);
    CHECK(trivial.generators[0] == Permutation::from_cycles(3, {}));
    CHECK(serialize_group(trivial).find("()\n") != std::string::npos);

    // Multi-cycle generator.
    const auto v4 = parse_group(
        "FORMAT 1\nNAME V4\nDEGREE 4\nGENERATORS\n(1,2)(3,4)\n(1,3)(2,4)\n");
    CHECK(v4.generators[0] == cyc(4, {{0, 1}, {2, 3}}));

    CHECK_THROWS_AS(parse_group("FORMAT 1\nNAME X\nDEGREE 0\nGENERATORS\n"),
                    parse_error);
    CHECK_THROWS_AS(
        parse_group("FORMAT 1\nNAME X\nDEGREE 3\nGENERATORS\n(1,5)\n"),
        parse_error);
    CHECK_THROWS_AS(
        parse_group("FORMAT 1\nNAME X\nDEGREE 3\nGENERATORS\n(1,2)(2,3)\n"),
        parse_error);
    CHECK_THROWS_AS(
        parse_group("FORMAT 1\nNAME X\nDEGREE 3\nGENERATORS\n(1,2\n"),
        parse_error);
    CHECK_THROWS_AS(parse_group("FORMAT 1\nNAME X\nDEGREE 3\n(1,2)\n"),
                    parse_error);
    CHECK_THROWS_AS(
        parse_group("FORMAT 1\nNAME X\nDEGREE 3\nGENERATORS\n(1, 2)\n"),
        parse_error);  // whitespace splits the token
}

TEST_CASE("battery group fixtures construct groups of the right order") {
    const std::map<std::string, std::int64_t> expected = {
        {"c2.grp", 2},    {"c3.grp", 3},   {"c4.grp", 4},   {"c5.grp", 5},
        {"c6.grp", 6},    {"c7.grp", 7},   {"c8.grp", 8},   {"c9.grp", 9},
        {"c10.grp", 10},  {"c11.grp", 11}, {"c12.grp", 12}, {"s3.grp", 6},
        {"s4.grp", 24},   {"s5.grp", 120}, {"a4.grp", 12},  {"a5.grp", 60},
        {"d8.grp", 8},    {"d12.grp", 12}, {"q8.grp", 8},   {"f20.grp", 20},
        {"psl27.grp", 168},
    };
    for (const auto& [file, order] : expected) {
        CAPTURE(file);
        const auto doc = parse_group(read_file(fixtures_dir() / "groups" / file));
        ctt::permgroup::PermutationGroup g(doc.degree, doc.generators);
        CHECK(g.order() == BigInt(order));
        CHECK(serialize_group(doc) ==
              read_file(fixtures_dir() / "groups" / file));
    }
}
