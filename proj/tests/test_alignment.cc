#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "forgetlens/alignment.h"
#include "forgetlens/error.h"
#include "forgetlens/parallel.h"
#include "oracles.h"

namespace fl = forgetlens;

namespace {

fl::SegmentAlignment align(std::vector<std::pair<std::uint32_t, std::uint32_t>> links) {
  fl::SegmentAlignment a;
  a.links = std::move(links);
  a.normalize();
  return a;
}

std::set<std::pair<std::uint32_t, std::uint32_t>> link_set(
    const fl::SegmentAlignment& a) {
  return {a.links.begin(), a.links.end()};
}

fl::SegmentAlignment random_alignment(std::mt19937& rng, std::uint32_t max_i,
                                      std::uint32_t max_j, std::size_t max_links) {
  std::uniform_int_distribution<std::uint32_t> di(0, max_i);
  std::uniform_int_distribution<std::uint32_t> dj(0, max_j);
  std::uniform_int_distribution<std::size_t> dn(0, max_links);
  fl::SegmentAlignment a;
  const std::size_t n = dn(rng);
  for (std::size_t k = 0; k < n; ++k) a.links.emplace_back(di(rng), dj(rng));
  a.normalize();
  return a;
}

}  // namespace

TEST_CASE("parse_pharaoh reads i-j pairs") {
  const fl::SegmentAlignment a = fl::parse_pharaoh("0-0 1-2");
  CHECK(link_set(a) ==
        std::set<std::pair<std::uint32_t, std::uint32_t>>{{0, 0}, {1, 2}});
  CHECK(fl::parse_pharaoh("").links.empty());
  CHECK(fl::parse_pharaoh("0-0 0-0").links.size() == 1);
}

TEST_CASE("parse_pharaoh rejects malformed pairs") {
  CHECK_THROWS_AS(fl::parse_pharaoh("00"), fl::InputError);
  CHECK_THROWS_AS(fl::parse_pharaoh("0-x"), fl::InputError);
  CHECK_THROWS_AS(fl::parse_pharaoh("-1"), fl::InputError);
  CHECK_THROWS_AS(fl::parse_pharaoh("3- 4"), fl::InputError);
}

TEST_CASE("symmetrize intersection and union flip the reverse side") {
  const fl::SegmentAlignment fwd = align({{0, 0}, {1, 1}});
  const fl::SegmentAlignment rev = align({{1, 1}, {2, 2}});  // (j,i) pairs
  const auto inter =
      fl::symmetrize(fwd, rev, fl::Symmetrization::kIntersection);
  CHECK(link_set(inter) ==
        std::set<std::pair<std::uint32_t, std::uint32_t>>{{1, 1}});
  const auto uni = fl::symmetrize(fwd, rev, fl::Symmetrization::kUnion);
  CHECK(link_set(uni) == std::set<std::pair<std::uint32_t, std::uint32_t>>{
                             {0, 0}, {1, 1}, {2, 2}});
}

TEST_CASE("grow-diag-final-and matches a hand-traced 3x3 run") {
  // fwd = {(0,0),(1,1)}; rev in (j,i) orientation flips to
  // {(0,0),(2,2),(2,1)}. Intersection {(0,0)}. Grow adopts (1,1)
  // diagonally, then (2,1) and (2,2) from (1,1)'s neighborhood while an
  // endpoint is still free. Final-and has nothing left to add.
  const fl::SegmentAlignment fwd = align({{0, 0}, {1, 1}});
  const fl::SegmentAlignment rev = align({{0, 0}, {2, 2}, {1, 2}});
  const auto gdfa =
      fl::symmetrize(fwd, rev, fl::Symmetrization::kGrowDiagFinalAnd);
  CHECK(link_set(gdfa) == std::set<std::pair<std::uint32_t, std::uint32_t>>{
                              {0, 0}, {1, 1}, {2, 1}, {2, 2}});
}

TEST_CASE("grow-diag-final-and adopts a diagonal chain from the intersection") {
  const fl::SegmentAlignment fwd = align({{0, 0}, {1, 1}, {2, 2}});
  const fl::SegmentAlignment rev = align({{0, 0}, {1, 1}});
  const auto gdfa =
      fl::symmetrize(fwd, rev, fl::Symmetrization::kGrowDiagFinalAnd);
  CHECK(link_set(gdfa) == std::set<std::pair<std::uint32_t, std::uint32_t>>{
                              {0, 0}, {1, 1}, {2, 2}});
}

TEST_CASE("final-and adds isolated links only when both sides are free") {
  // union-only link (3,0) shares target 0 with the intersection point
  // (0,0): final-and must not adopt it. (4,4) is free on both sides.
  const fl::SegmentAlignment fwd = align({{0, 0}, {3, 0}, {4, 4}});
  const fl::SegmentAlignment rev = align({{0, 0}});  // flips to {(0,0)}
  const auto gdfa =
      fl::symmetrize(fwd, rev, fl::Symmetrization::kGrowDiagFinalAnd);
  CHECK(link_set(gdfa) == std::set<std::pair<std::uint32_t, std::uint32_t>>{
                              {0, 0}, {4, 4}});
}

TEST_CASE("intersection within gdfa within union on random alignments") {
  std::mt19937 rng(42);
  for (int iter = 0; iter < 200; ++iter) {
    const fl::SegmentAlignment fwd = random_alignment(rng, 6, 6, 10);
    const fl::SegmentAlignment rev = random_alignment(rng, 6, 6, 10);
    const auto inter = link_set(
        fl::symmetrize(fwd, rev, fl::Symmetrization::kIntersection));
    const auto gdfa = link_set(
        fl::symmetrize(fwd, rev, fl::Symmetrization::kGrowDiagFinalAnd));
    const auto uni =
        link_set(fl::symmetrize(fwd, rev, fl::Symmetrization::kUnion));
    CHECK(std::includes(gdfa.begin(), gdfa.end(), inter.begin(), inter.end()));
    CHECK(std::includes(uni.begin(), uni.end(), gdfa.begin(), gdfa.end()));
  }
}

TEST_CASE("extract_replacements records an aligned change") {
  const fl::Corpus orig = fl::make_corpus({{"the", "aircraft", "landed"}});
  const fl::Corpus adapted = fl::make_corpus({{"the", "plane", "landed"}});
  const std::vector<fl::SegmentAlignment> alignments = {
      align({{0, 0}, {1, 1}, {2, 2}})};
  const auto records =
      fl::extract_replacements(orig, adapted, alignments, {"aircraft"});
  REQUIRE(records.size() == 1);
  CHECK(records[0].original_token == "aircraft");
  CHECK(records[0].replacement_token == "plane");
  CHECK(records[0].occurrence_count == 1);
  CHECK_FALSE(records[0].unaligned);
}

TEST_CASE("identical corpora with diagonal alignment produce no records") {
  const fl::Corpus c = fl::make_corpus({{"a", "b"}, {"c"}});
  const std::vector<fl::SegmentAlignment> alignments = {
      align({{0, 0}, {1, 1}}), align({{0, 0}})};
  CHECK(fl::extract_replacements(c, c, alignments, {"a", "b", "c"}).empty());
}

TEST_CASE("an unlinked focus occurrence becomes an unaligned record") {
  const fl::Corpus orig = fl::make_corpus({{"England", "won"}});
  const fl::Corpus adapted = fl::make_corpus({{"victory"}});
  const std::vector<fl::SegmentAlignment> alignments = {align({{1, 0}})};
  const auto records =
      fl::extract_replacements(orig, adapted, alignments, {"England"});
  REQUIRE(records.size() == 1);
  CHECK(records[0].original_token == "England");
  CHECK(records[0].unaligned);
  CHECK(records[0].replacement_token.empty());
  CHECK(records[0].occurrence_count == 1);
}

TEST_CASE("extract_replacements reports out-of-bounds links with the segment") {
  const fl::Corpus orig = fl::make_corpus({{"a"}, {"b"}});
  const fl::Corpus adapted = fl::make_corpus({{"x"}, {"y"}});
  const std::vector<fl::SegmentAlignment> alignments = {align({{0, 0}}),
                                                        align({{0, 5}})};
  CHECK_THROWS_WITH_AS(
      fl::extract_replacements(orig, adapted, alignments, {"a", "b"}),
      doctest::Contains("segment 1"), fl::ConstraintError);
}

TEST_CASE("extract_replacements agrees with the brute-force counter") {
  std::mt19937 rng(314);
  for (int iter = 0; iter < 100; ++iter) {
    const fl::Corpus orig = oracle::random_corpus(rng, 12, 6, 5, false);
    std::vector<std::vector<std::string>> adapted_lines;
    std::vector<fl::SegmentAlignment> alignments;
    std::uniform_int_distribution<std::size_t> len(1, 6);
    std::uniform_int_distribution<int> tok(0, 4);
    for (const auto& seg : orig.segments) {
      std::vector<std::string> line(len(rng));
      for (auto& t : line) t = "t" + std::to_string(tok(rng));
      fl::SegmentAlignment a;
      std::uniform_int_distribution<std::uint32_t> di(
          0, static_cast<std::uint32_t>(seg.size()) - 1);
      std::uniform_int_distribution<std::uint32_t> dj(
          0, static_cast<std::uint32_t>(line.size()) - 1);
      const std::size_t nlinks = len(rng) % 5;
      for (std::size_t k = 0; k < nlinks; ++k) {
        a.links.emplace_back(di(rng), dj(rng));
      }
      a.normalize();
      adapted_lines.push_back(std::move(line));
      alignments.push_back(std::move(a));
    }
    const fl::Corpus adapted = fl::make_corpus(std::move(adapted_lines));
    const std::set<std::string> focus = {"t0", "t1", "t2"};
    const auto records = fl::extract_replacements(
        orig, adapted, alignments, {focus.begin(), focus.end()});
    const auto expected =
        oracle::brute_replacement_counts(orig, adapted, alignments, focus);
    std::map<std::string, std::uint64_t> got;
    for (const auto& rec : records) {
      got[rec.original_token + " -> " +
          (rec.unaligned ? "<NULL>" : rec.replacement_token)] =
          rec.occurrence_count;
    }
    CHECK(got == expected);
  }
}

TEST_CASE("with functional alignments record counts stay within occurrences") {
  std::mt19937 rng(159);
  for (int iter = 0; iter < 50; ++iter) {
    const fl::Corpus orig = oracle::random_corpus(rng, 10, 6, 4, false);
    std::vector<std::vector<std::string>> adapted_lines;
    std::vector<fl::SegmentAlignment> alignments;
    std::uniform_int_distribution<int> tok(0, 3);
    for (const auto& seg : orig.segments) {
      std::vector<std::string> line(seg.size());
      for (auto& t : line) t = "t" + std::to_string(tok(rng));
      fl::SegmentAlignment a;
      for (std::uint32_t i = 0; i < seg.size(); ++i) {
        if (rng() % 2 == 0) {
          a.links.emplace_back(
              i, static_cast<std::uint32_t>(rng() % line.size()));
        }
      }
      a.normalize();
      adapted_lines.push_back(std::move(line));
      alignments.push_back(std::move(a));
    }
    const fl::Corpus adapted = fl::make_corpus(std::move(adapted_lines));
    const auto records =
        fl::extract_replacements(orig, adapted, alignments, {"t0"});

    std::uint64_t total_records = 0;
    for (const auto& rec : records) total_records += rec.occurrence_count;
    std::uint64_t occurrences = 0;
    for (const auto& seg : orig.segments) {
      occurrences += std::count(seg.tokens.begin(), seg.tokens.end(), "t0");
    }
    CHECK(total_records <= occurrences);
  }
}

TEST_CASE("annotate_frequencies fills adaptation counts and keeps occurrences") {
  fl::Vocabulary adaptation;
  adaptation.counts = {{"species", 2}, {"types", 664}};
  adaptation.total = 666;
  std::vector<fl::ReplacementRecord> records(2);
  records[0].original_token = "species";
  records[0].replacement_token = "types";
  records[0].occurrence_count = 7;
  records[1].original_token = "citizens";
  records[1].unaligned = true;
  records[1].occurrence_count = 3;
  const auto annotated = fl::annotate_frequencies(records, adaptation);
  CHECK(annotated[0].original_freq_in_adaptation == 2);
  CHECK(annotated[0].replacement_freq_in_adaptation == 664);
  CHECK(annotated[0].occurrence_count == 7);
  CHECK(annotated[1].original_freq_in_adaptation == 0);
  CHECK(annotated[1].replacement_freq_in_adaptation == 0);
  CHECK(annotated[1].occurrence_count == 3);
}

TEST_CASE("annotate_frequencies equals a direct recount on random records") {
  std::mt19937 rng(265);
  for (int iter = 0; iter < 30; ++iter) {
    const fl::Corpus adaptation = oracle::random_corpus(rng, 20, 8, 6);
    const fl::Vocabulary vocab = fl::count_vocab(adaptation);
    std::vector<fl::ReplacementRecord> records;
    std::uniform_int_distribution<int> tok(0, 7);
    for (int k = 0; k < 10; ++k) {
      fl::ReplacementRecord rec;
      rec.original_token = "t" + std::to_string(tok(rng));
      rec.replacement_token = "t" + std::to_string(tok(rng));
      rec.occurrence_count = 1 + k;
      records.push_back(rec);
    }
    const auto annotated = fl::annotate_frequencies(records, vocab);
    for (const auto& rec : annotated) {
      std::uint64_t expected = 0;
      for (const auto& seg : adaptation.segments) {
        expected += std::count(seg.tokens.begin(), seg.tokens.end(),
                               rec.original_token);
      }
      CHECK(rec.original_freq_in_adaptation == expected);
    }
  }
}

TEST_CASE("top_replacements keeps the best replacement per token") {
  std::vector<fl::ReplacementRecord> records(3);
  records[0].original_token = "satisfied";
  records[0].replacement_token = "pleased";
  records[0].occurrence_count = 10;
  records[0].replacement_freq_in_adaptation = 90;
  records[1].original_token = "satisfied";
  records[1].replacement_token = "happy";
  records[1].occurrence_count = 1;
  records[1].replacement_freq_in_adaptation = 29;
  records[2].original_token = "week";
  records[2].replacement_token = "month";
  records[2].occurrence_count = 2;
  const auto top = fl::top_replacements(records);
  REQUIRE(top.size() == 2);
  CHECK(top[0].original_token == "satisfied");
  CHECK(top[0].replacement_token == "pleased");
  CHECK(top[1].original_token == "week");

  // tie on occurrences: adaptation frequency breaks it
  records[1].occurrence_count = 10;
  const auto tied = fl::top_replacements(records);
  CHECK(tied[0].replacement_token == "pleased");
  // full tie: lexicographically smaller replacement wins
  records[1].replacement_freq_in_adaptation = 90;
  const auto lex = fl::top_replacements(records);
  CHECK(lex[0].replacement_token == "happy");
}

TEST_CASE("parallel replacement extraction matches the serial reference") {
  std::mt19937 rng(977);
  const fl::Corpus orig = oracle::random_corpus(rng, 150, 8, 6, false);
  std::vector<std::vector<std::string>> adapted_lines;
  std::vector<fl::SegmentAlignment> alignments;
  std::uniform_int_distribution<int> tok(0, 5);
  for (const auto& seg : orig.segments) {
    std::vector<std::string> line(seg.size());
    for (auto& t : line) t = "t" + std::to_string(tok(rng));
    fl::SegmentAlignment a;
    for (std::uint32_t i = 0; i < seg.size(); ++i) {
      a.links.emplace_back(i, i);
    }
    adapted_lines.push_back(std::move(line));
    alignments.push_back(std::move(a));
  }
  const fl::Corpus adapted = fl::make_corpus(std::move(adapted_lines));
  const auto expected = fl::serial::extract_replacements(
      orig, adapted, alignments, {"t0", "t1", "t2", "t3", "t4", "t5"});
  for (int threads : {1, 2, 8}) {
    fl::parallel::set_max_threads(threads);
    const auto got = fl::extract_replacements(
        orig, adapted, alignments, {"t0", "t1", "t2", "t3", "t4", "t5"});
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].original_token == expected[i].original_token);
      CHECK(got[i].replacement_token == expected[i].replacement_token);
      CHECK(got[i].occurrence_count == expected[i].occurrence_count);
    }
  }
  fl::parallel::set_max_threads(0);
}
