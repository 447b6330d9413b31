#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include "doctest.h"
#include "forgetlens/corpus.h"
#include "forgetlens/error.h"
#include "forgetlens/parallel.h"
#include "oracles.h"

namespace fl = forgetlens;

namespace {

// Writes raw bytes to a fresh temp file and returns its path.
std::string temp_file(const std::string& contents, const char* tag) {
  static int counter = 0;
  const std::string path =
      (std::filesystem::temp_directory_path() /
       ("forgetlens_test_" + std::string(tag) + "_" +
        std::to_string(counter++) + ".txt"))
          .string();
  std::ofstream out(path, std::ios::binary);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  return path;
}

}  // namespace

TEST_CASE("load_corpus splits lines on whitespace runs") {
  const std::string path = temp_file("a b\nc\n", "load");
  const fl::Corpus c = fl::load_corpus(path);
  REQUIRE(c.size() == 2);
  CHECK(c.segments[0].tokens == std::vector<std::string>{"a", "b"});
  CHECK(c.segments[1].tokens == std::vector<std::string>{"c"});
  CHECK(c.segments[0].index == 0);
  CHECK(c.segments[1].index == 1);
  std::remove(path.c_str());
}

TEST_CASE("load_corpus of an empty file is an empty corpus") {
  const std::string path = temp_file("", "empty");
  CHECK(fl::load_corpus(path).size() == 0);
  std::remove(path.c_str());
}

TEST_CASE("load_corpus strips CR and collapses whitespace runs") {
  const std::string path = temp_file("a  b\r\n", "cr");
  const fl::Corpus c = fl::load_corpus(path);
  REQUIRE(c.size() == 1);
  CHECK(c.segments[0].tokens == std::vector<std::string>{"a", "b"});
  std::remove(path.c_str());
}

TEST_CASE("load_corpus keeps empty lines as empty segments") {
  const std::string path = temp_file("a\n\nb\n", "blank");
  const fl::Corpus c = fl::load_corpus(path);
  REQUIRE(c.size() == 3);
  CHECK(c.segments[1].tokens.empty());
  std::remove(path.c_str());
}

TEST_CASE("load_corpus rejects invalid UTF-8 with a line number") {
  const std::string path = temp_file("ok\n\xC3\x28 bad\n", "utf8");
  CHECK_THROWS_WITH_AS(fl::load_corpus(path),
                       doctest::Contains(":2"), fl::InputError);
  std::remove(path.c_str());
}

TEST_CASE("load_corpus accepts multi-byte UTF-8 tokens") {
  const std::string path = temp_file("oc\xE2\x96\x81 tober\n", "mb");
  const fl::Corpus c = fl::load_corpus(path);
  REQUIRE(c.size() == 1);
  CHECK(c.segments[0].tokens.size() == 2);
  std::remove(path.c_str());
}

TEST_CASE("missing file raises InputError") {
  CHECK_THROWS_AS(fl::load_corpus("/nonexistent/forgetlens"), fl::InputError);
}

TEST_CASE("round trip is idempotent after the first pass") {
  const std::string path = temp_file("a   b\nc\n\nd e\n", "rt");
  const fl::Corpus first = fl::load_corpus(path);
  const std::string out1 = temp_file("", "rt1");
  fl::write_corpus(first, out1);
  const fl::Corpus second = fl::load_corpus(out1);
  const std::string out2 = temp_file("", "rt2");
  fl::write_corpus(second, out2);

  std::ifstream a(out1, std::ios::binary), b(out2, std::ios::binary);
  const std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
  const std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
  CHECK(bytes_a == bytes_b);
  REQUIRE(second.size() == first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(second.segments[i].tokens == first.segments[i].tokens);
  }
  std::remove(path.c_str());
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

TEST_CASE("count_vocab basics") {
  const fl::Vocabulary v = fl::count_vocab(fl::make_corpus({{"a", "b", "a"}}));
  CHECK(v.count("a") == 2);
  CHECK(v.count("b") == 1);
  CHECK(v.total == 3);

  const fl::Vocabulary empty = fl::count_vocab(fl::make_corpus({}));
  CHECK(empty.counts.empty());
  CHECK(empty.total == 0);
}

TEST_CASE("count_vocab equals naive flat count on random corpora") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 50; ++iter) {
    const fl::Corpus c = oracle::random_corpus(rng, 30, 12, 9);
    // concatenate-and-count
    std::map<std::string, std::uint64_t> flat;
    std::uint64_t total = 0;
    for (const auto& seg : c.segments) {
      for (const auto& tok : seg.tokens) {
        ++flat[tok];
        ++total;
      }
    }
    const fl::Vocabulary v = fl::count_vocab(c);
    CHECK(v.total == total);
    REQUIRE(v.counts.size() == flat.size());
    for (const auto& [tok, n] : flat) CHECK(v.count(tok) == n);
  }
}

TEST_CASE("count_vocab parallel kernel matches the serial reference") {
  std::mt19937 rng(11);
  const fl::Corpus c = oracle::random_corpus(rng, 200, 20, 40);
  const fl::Vocabulary expected = fl::serial::count_vocab(c);
  for (int threads : {1, 3, 8}) {
    fl::parallel::set_max_threads(threads);
    const fl::Vocabulary got = fl::count_vocab(c);
    CHECK(got.total == expected.total);
    CHECK(got.counts == expected.counts);
  }
  fl::parallel::set_max_threads(0);
}

TEST_CASE("count_vocab is additive over concatenation and order-invariant") {
  std::mt19937 rng(13);
  for (int iter = 0; iter < 20; ++iter) {
    const fl::Corpus a = oracle::random_corpus(rng, 15, 8, 6);
    const fl::Corpus b = oracle::random_corpus(rng, 15, 8, 6);
    std::vector<std::vector<std::string>> joined;
    for (const auto& s : a.segments) joined.push_back(s.tokens);
    for (const auto& s : b.segments) joined.push_back(s.tokens);
    const fl::Vocabulary vj = fl::count_vocab(fl::make_corpus(joined));
    const fl::Vocabulary va = fl::count_vocab(a);
    const fl::Vocabulary vb = fl::count_vocab(b);
    CHECK(vj.total == va.total + vb.total);
    for (const auto& [tok, n] : vj.counts) {
      CHECK(n == va.count(tok) + vb.count(tok));
    }

    std::shuffle(joined.begin(), joined.end(), rng);
    const fl::Vocabulary vp = fl::count_vocab(fl::make_corpus(joined));
    CHECK(vp.counts == vj.counts);
  }
}

TEST_CASE("distribution normalizes counts") {
  fl::Vocabulary v;
  v.counts = {{"a", 2}, {"b", 1}};
  v.total = 3;
  const fl::Distribution d = fl::distribution(v);
  CHECK(d.at("a") == doctest::Approx(2.0 / 3.0));
  CHECK(d.at("b") == doctest::Approx(1.0 / 3.0));

  fl::Vocabulary single;
  single.counts = {{"a", 5}};
  single.total = 5;
  CHECK(fl::distribution(single).at("a") == 1.0);

  CHECK_THROWS_AS(fl::distribution(fl::Vocabulary{}), fl::ConstraintError);
}

TEST_CASE("distribution sums to 1 within 1e-9 on random vocabularies") {
  std::mt19937 rng(17);
  for (int iter = 0; iter < 30; ++iter) {
    const fl::Corpus c = oracle::random_corpus(rng, 40, 15, 25, false);
    const fl::Distribution d = fl::distribution(fl::count_vocab(c));
    double sum = 0.0;
    for (const auto& [_, p] : d) sum += p;
    CHECK(std::abs(sum - 1.0) <= 1e-9);
  }
}

TEST_CASE("load_scores parses one decimal per line") {
  const std::string path = temp_file("0.9\n0.7\n", "scores");
  const fl::ScoreFile s = fl::load_scores(path);
  REQUIRE(s.values.size() == 2);
  CHECK(s.values[0] == doctest::Approx(0.9));
  CHECK(s.values[1] == doctest::Approx(0.7));
  std::remove(path.c_str());

  const std::string empty = temp_file("", "scores0");
  CHECK(fl::load_scores(empty).values.empty());
  std::remove(empty.c_str());

  const std::string neg = temp_file("-2.4\n", "scoresn");
  CHECK(fl::load_scores(neg).values[0] == doctest::Approx(-2.4));
  std::remove(neg.c_str());
}

TEST_CASE("load_scores reports the bad line number") {
  const std::string path = temp_file("1.0\nnope\n", "scoresbad");
  CHECK_THROWS_WITH_AS(fl::load_scores(path), doctest::Contains(":2"),
                       fl::InputError);
  std::remove(path.c_str());
}

TEST_CASE("load_vocab_file accepts plain tokens and token<TAB>count") {
  const std::string path = temp_file("alpha\nbeta\t3\n", "vocab");
  const fl::Vocabulary v = fl::load_vocab_file(path);
  CHECK(v.count("alpha") == 1);
  CHECK(v.count("beta") == 3);
  CHECK(v.total == 4);
  std::remove(path.c_str());

  const std::string bad = temp_file("gamma\tnot_a_number\n", "vocabbad");
  CHECK_THROWS_AS(fl::load_vocab_file(bad), fl::InputError);
  std::remove(bad.c_str());
}

TEST_CASE("parallel corpus construction rejects length mismatch") {
  CHECK_THROWS_AS(fl::ParallelCorpus(fl::make_corpus({{"a"}}),
                                     fl::make_corpus({{"b"}, {"c"}})),
                  fl::ConstraintError);
}

TEST_CASE("for_each_segment streams the same segments load_corpus returns") {
  const std::string path = temp_file("a b\n\nc d e\n", "stream");
  const fl::Corpus whole = fl::load_corpus(path);
  std::size_t i = 0;
  fl::for_each_segment(path, [&](fl::Segment&& seg) {
    REQUIRE(i < whole.size());
    CHECK(seg.tokens == whole.segments[i].tokens);
    CHECK(seg.index == i);
    ++i;
  });
  CHECK(i == whole.size());
  std::remove(path.c_str());
}
