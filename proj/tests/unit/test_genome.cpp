#include <stdexcept>
#include <string>

#include "doctest.h"
#include "svps/genome.hpp"
#include "svps/rng.hpp"

using namespace svps;

TEST_CASE("string round trip and bit access") {
  const std::string s = "1011001110001011";
  const Genome g = Genome::from_string(s);
  CHECK(g.length() == 16);
  CHECK(g.to_string() == s);
  for (int i = 0; i < g.length(); ++i) {
    CHECK(g.get(i) == (s[static_cast<std::size_t>(i)] == '1'));
  }

  Genome h(5);
  CHECK(h.to_string() == "00000");
  h.set(0, true);
  h.set(4, true);
  CHECK(h.to_string() == "10001");
  h.set(0, false);
  CHECK(h.to_string() == "00001");
}

TEST_CASE("unitation equals a naive character count") {
  RandomStream rng(99);
  for (int length : {1, 7, 63, 64, 65, 130}) {
    for (int rep = 0; rep < 20; ++rep) {
      const Genome g = Genome::random(length, rng);
      int naive = 0;
      for (char c : g.to_string()) naive += c == '1';
      CHECK(g.unitation() == naive);
      CHECK(unitation(g.words()) == naive);
    }
  }
}

TEST_CASE("random genomes keep the unused top-word bits zero") {
  RandomStream rng(7);
  for (int length : {1, 3, 63, 65, 70, 129}) {
    const Genome g = Genome::random(length, rng);
    const int tail = length & 63;
    if (tail != 0) {
      const std::uint64_t top = g.words()[g.words().size() - 1];
      CHECK((top >> tail) == 0);
    }
    CHECK(static_cast<int>(g.words().size()) == Genome::word_count(length));
  }
}

TEST_CASE("construction rejects bad input") {
  CHECK_THROWS_AS(Genome(0), std::invalid_argument);
  CHECK_THROWS_AS(Genome(-3), std::invalid_argument);
  CHECK_THROWS_AS(Genome::from_string("01x1"), std::invalid_argument);
}

TEST_CASE("equality is by content") {
  CHECK(Genome::from_string("0101") == Genome::from_string("0101"));
  CHECK(Genome::from_string("0101") != Genome::from_string("0100"));
}
