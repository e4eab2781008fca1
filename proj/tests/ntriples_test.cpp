#include <doctest.h>

#include <random>
#include <sstream>

#include "memento/errors.hpp"
#include "memento/ntriples.hpp"

using namespace memento;

TEST_CASE("grammar base cases") {
    auto t = parse_ntriples_line("<http://e/s> <http://e/p> \"42\" .");
    CHECK(t.subject == "http://e/s");
    CHECK(t.predicate == "http://e/p");
    CHECK(t.object.kind == Term::Kind::Literal);
    CHECK(t.object.lexical == "42");

    t = parse_ntriples_line("<http://e/s> <http://e/p> <http://e/o> .");
    CHECK(t.object.kind == Term::Kind::Iri);

    t = parse_ntriples_line("<http://e/s> <http://e/p> _:b0 .");
    CHECK(t.object.kind == Term::Kind::Blank);
    CHECK(t.object.lexical == "b0");

    t = parse_ntriples_line(
        "<http://e/s> <http://e/p> \"33188\"^^<http://www.w3.org/2001/XMLSchema#int> .");
    CHECK(t.object.datatype == "http://www.w3.org/2001/XMLSchema#int");

    t = parse_ntriples_line("<http://e/s> <http://e/p> \"France\"@fr .");
    CHECK(t.object.lang == "fr");
}

TEST_CASE("comments, blank lines and malformed lines") {
    std::istringstream in(
        "# a comment\n"
        "\n"
        "<http://e/s> <http://e/p> \"a\" .\n"
        "<http://e/s> <http://e/p> .\n"
        "<http://e/s> <http://e/p> \"b\" .\n");
    NTriplesParser lax(in, false);
    std::vector<Triple> got;
    while (auto t = lax.next()) got.push_back(*t);
    CHECK(got.size() == 2);
    CHECK(lax.skipped() == 1);

    std::istringstream in2("<http://e/s> <http://e/p> .\n");
    NTriplesParser strict(in2, true);
    CHECK_THROWS_AS(strict.next(), NtSyntaxError);
}

TEST_CASE("syntax errors carry the line number") {
    std::istringstream in("<http://e/s> <http://e/p> \"ok\" .\nbroken\n");
    NTriplesParser parser(in, true);
    parser.next();
    try {
        parser.next();
        FAIL("expected NtSyntaxError");
    } catch (const NtSyntaxError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("blank-node subjects rejected") {
    CHECK_THROWS_AS(parse_ntriples_line("_:b <http://e/p> \"x\" ."), NtSyntaxError);
}

TEST_CASE("escape sequences decode and re-encode") {
    auto t = parse_ntriples_line("<http://e/s> <http://e/p> \"a\\\"b\\nc\\u00e9\" .");
    CHECK(t.object.lexical == "a\"b\nc\xc3\xa9");
    // roundtrip through the serializer
    auto again = parse_ntriples_line(serialize_triple(t));
    CHECK(again == t);
}

TEST_CASE("parser is line-local: corrupting line k only loses line k") {
    std::string good;
    for (int i = 0; i < 20; ++i)
        good += "<http://e/s" + std::to_string(i) + "> <http://e/p> \"v" + std::to_string(i) +
                "\" .\n";
    for (int k = 0; k < 20; ++k) {
        std::istringstream in(good);
        std::string corrupted;
        std::string line;
        int n = 0;
        while (std::getline(in, line))
            corrupted += (n++ == k ? "garbage" : line) + "\n";
        std::istringstream cin(corrupted);
        NTriplesParser parser(cin, false);
        std::vector<Triple> got;
        while (auto t = parser.next()) got.push_back(*t);
        CHECK(got.size() == 19);
        CHECK(parser.skipped() == 1);
        for (const auto& t : got) CHECK(t.subject != "http://e/s" + std::to_string(k) + "x");
    }
}

TEST_CASE("select_values matches a naive full-scan oracle") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> pick(0, 4);
    std::vector<Triple> triples;
    for (int i = 0; i < 200; ++i) {
        Triple t;
        t.subject = "http://e/s" + std::to_string(pick(rng));
        t.predicate = "http://e/p" + std::to_string(pick(rng));
        t.object = {Term::Kind::Literal, std::to_string(i), "", ""};
        triples.push_back(t);
    }
    for (int s = 0; s < 5; ++s) {
        for (int p = 0; p < 5; ++p) {
            std::string subject = "http://e/s" + std::to_string(s);
            std::string predicate = "http://e/p" + std::to_string(p);
            std::vector<std::string> expected;
            for (const auto& t : triples)
                if (t.subject == subject && t.predicate == predicate)
                    expected.push_back(t.object.lexical);
            CHECK(select_values(triples, subject, predicate) == expected);
        }
    }
}

TEST_CASE("select_values examples") {
    auto triples = parse_ntriples_string(
        "<http://dbpedia.org/resource/France> "
        "<http://dbpedia.org/property/gdpPppPerCapita> \"33188\" .\n");
    CHECK(select_values(triples, "http://dbpedia.org/resource/France",
                        "http://dbpedia.org/property/gdpPppPerCapita") ==
          std::vector<std::string>{"33188"});
    CHECK(select_values(triples, "http://dbpedia.org/resource/France",
                        "http://dbpedia.org/property/other")
              .empty());

    auto two = parse_ntriples_string(
        "<http://e/s> <http://e/p> \"first\" .\n<http://e/s> <http://e/p> \"second\" .\n");
    CHECK(select_values(two, "http://e/s", "http://e/p") ==
          std::vector<std::string>{"first", "second"});
}
