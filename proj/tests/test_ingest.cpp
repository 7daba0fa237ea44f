#include "doctest.h"

#include <algorithm>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "peernet/ingest.hpp"

using namespace peernet;

namespace {

ParsedEvents parse_strings(const std::string& comments,
                           const std::string& ratings) {
  std::istringstream comment_stream(comments);
  std::istringstream rating_stream(ratings);
  return parse_events(comment_stream, "comments.csv", rating_stream,
                      "ratings.csv");
}

const char* kCommentHeader = "community_id,prompt,commenter_id,receiver_id\n";
const char* kRatingHeader =
    "community_id,prompt,rater_id,receiver_id,overall_rating\n";

}  // namespace

TEST_CASE("rows map directly onto events") {
  const ParsedEvents events = parse_strings(
      std::string(kCommentHeader) + "g1,2,alice,bob\n",
      std::string(kRatingHeader) + "g1,2,carol,bob,4\n");
  REQUIRE(events.comments.size() == 1);
  CHECK(events.comments[0].community_id == "g1");
  CHECK(events.comments[0].prompt == 2);
  CHECK(events.comments[0].commenter_id == "alice");
  CHECK(events.comments[0].receiver_id == "bob");
  REQUIRE(events.ratings.size() == 1);
  CHECK(events.ratings[0].rater_id == "carol");
  CHECK(events.ratings[0].overall_rating == 4);
}

TEST_CASE("malformed rows report file, line and field") {
  // Rating 9 on line 3 of the ratings file.
  CHECK_THROWS_WITH_AS(
      parse_strings(kCommentHeader, std::string(kRatingHeader) +
                                        "g1,1,a,b,3\ng1,2,carol,bob,9\n"),
      doctest::Contains("rating out of range at line 3"), std::runtime_error);

  CHECK_THROWS_WITH_AS(
      parse_strings(std::string(kCommentHeader) + "g1,1,alice\n", kRatingHeader),
      doctest::Contains("comments.csv:2"), std::runtime_error);

  CHECK_THROWS_WITH_AS(
      parse_strings(std::string(kCommentHeader) + "g1,zero,alice,bob\n",
                    kRatingHeader),
      doctest::Contains("'prompt'"), std::runtime_error);

  CHECK_THROWS_WITH_AS(
      parse_strings(std::string(kCommentHeader) + "g1,0,alice,bob\n",
                    kRatingHeader),
      doctest::Contains("prompt"), std::runtime_error);

  CHECK_THROWS_WITH_AS(
      parse_strings(std::string(kCommentHeader) + "g1,1,alice,alice\n",
                    kRatingHeader),
      doctest::Contains("self-comment"), std::runtime_error);

  CHECK_THROWS_WITH_AS(
      parse_strings(std::string(kCommentHeader) + "g1,1,,bob\n", kRatingHeader),
      doctest::Contains("empty"), std::runtime_error);

  CHECK_THROWS_WITH_AS(parse_strings("wrong,header\n", kRatingHeader),
                       doctest::Contains("bad header"), std::runtime_error);
}

TEST_CASE("windows line endings parse the same") {
  const ParsedEvents events = parse_strings(
      "community_id,prompt,commenter_id,receiver_id\r\ng1,1,a,b\r\n",
      std::string(kRatingHeader) + "g1,1,a,b,5\r\n");
  CHECK(events.comments.size() == 1);
  CHECK(events.ratings[0].overall_rating == 5);
}

TEST_CASE("assembly counts comments in both directions and averages ratings") {
  const ParsedEvents events = parse_strings(
      std::string(kCommentHeader) + "g1,1,A,B\ng1,1,B,A\ng1,1,A,B\n",
      std::string(kRatingHeader) +
          "g1,1,A,B,4\ng1,1,C,B,5\ng1,1,B,B,3\ng1,1,B,A,2\ng1,1,A,C,3\n");
  const AssembledSeries assembled =
      assemble_series(events.comments, events.ratings, "g1",
                      MissingPolicy::error);
  const CommunitySeries& series = assembled.series;
  REQUIRE(series.roster == std::vector<std::string>{"A", "B", "C"});
  // Three comments between A and B, counted once per unordered pair.
  CHECK(series.prompts[0].graph.weights()(0, 1) == 3);
  CHECK(series.prompts[0].graph.weights()(1, 0) == 3);
  CHECK(series.prompts[0].graph.weights()(0, 2) == 0);
  // B received 4, 5 and 3.
  CHECK(series.prompts[0].ratings.values[1] == doctest::Approx(4.0));
  CHECK(series.prompts[0].ratings.values[0] == doctest::Approx(2.0));
  CHECK(assembled.imputations.empty());
}

TEST_CASE("missing ratings follow the policy") {
  const std::string comments =
      std::string(kCommentHeader) + "g1,1,A,C\ng1,2,A,C\n";
  const std::string ratings = std::string(kRatingHeader) +
                              "g1,1,A,B,4\ng1,1,B,A,2\ng1,1,B,C,3\n"
                              "g1,2,C,A,1\ng1,2,A,B,5\n";
  const ParsedEvents events = parse_strings(comments, ratings);

  // C is unrated in prompt 2.
  CHECK_THROWS_WITH_AS(assemble_series(events.comments, events.ratings, "g1",
                                       MissingPolicy::error),
                       doctest::Contains("'C'"), std::runtime_error);

  const AssembledSeries imputed = assemble_series(
      events.comments, events.ratings, "g1", MissingPolicy::community_mean);
  REQUIRE(imputed.imputations.size() == 1);
  CHECK(imputed.imputations[0].participant_id == "C");
  CHECK(imputed.imputations[0].prompt == 2);
  // Prompt-2 mean over rated participants A (1) and B (5).
  CHECK(imputed.imputations[0].value == doctest::Approx(3.0));
  CHECK(imputed.series.prompts[1].ratings.values[2] == doctest::Approx(3.0));
}

TEST_CASE("assembly is invariant to input row order") {
  std::vector<CommentEvent> comments = {{"g1", 1, "A", "B"},
                                        {"g1", 2, "B", "C"},
                                        {"g1", 1, "C", "A"},
                                        {"g1", 2, "A", "B"}};
  std::vector<RatingEvent> ratings = {{"g1", 1, "A", "B", 4},
                                      {"g1", 1, "B", "A", 3},
                                      {"g1", 1, "A", "C", 2},
                                      {"g1", 2, "C", "A", 5},
                                      {"g1", 2, "A", "B", 1},
                                      {"g1", 2, "B", "C", 3}};
  const AssembledSeries forward =
      assemble_series(comments, ratings, "g1", MissingPolicy::error);

  std::mt19937_64 rng(3);
  std::shuffle(comments.begin(), comments.end(), rng);
  std::shuffle(ratings.begin(), ratings.end(), rng);
  const AssembledSeries shuffled =
      assemble_series(comments, ratings, "g1", MissingPolicy::error);

  CHECK(forward.series.roster == shuffled.series.roster);
  for (int p = 0; p < 2; ++p) {
    CHECK(forward.series.prompts[p].graph.weights() ==
          shuffled.series.prompts[p].graph.weights());
    CHECK(forward.series.prompts[p].ratings.values ==
          shuffled.series.prompts[p].ratings.values);
  }
}

TEST_CASE("prompt indices must be contiguous from 1") {
  const std::vector<CommentEvent> comments;
  const std::vector<RatingEvent> ratings = {{"g1", 1, "A", "B", 4},
                                            {"g1", 3, "B", "A", 2}};
  CHECK_THROWS_WITH_AS(
      assemble_series(comments, ratings, "g1", MissingPolicy::error),
      doctest::Contains("contiguous"), std::runtime_error);

  const std::vector<RatingEvent> none;
  CHECK_THROWS_WITH_AS(
      assemble_series(comments, none, "g1", MissingPolicy::error),
      doctest::Contains("no rating events"), std::runtime_error);
}

TEST_CASE("emitted comment events expand weights and round-trip") {
  std::vector<RatingEvent> ratings;
  for (int p = 1; p <= 2; ++p) {
    for (const char* who : {"a", "b", "c"}) {
      ratings.push_back({"g1", p, "rater", who, p + 2});
    }
  }
  std::vector<CommentEvent> comments = {
      {"g1", 1, "a", "b"}, {"g1", 1, "b", "a"}, {"g1", 1, "c", "a"},
      {"g1", 2, "b", "c"}};
  // "rater" only appears as a rater, never rated: give it ratings too.
  for (int p = 1; p <= 2; ++p) ratings.push_back({"g1", p, "a", "rater", 3});

  const AssembledSeries original =
      assemble_series(comments, ratings, "g1", MissingPolicy::error);

  const std::vector<CommentEvent> emitted =
      emit_comment_events(original.series, "g1");
  // Weight 2 between a and b in prompt 1 expands to two events.
  const long ab = std::count_if(
      emitted.begin(), emitted.end(), [](const CommentEvent& e) {
        return e.prompt == 1 && e.commenter_id == "a" && e.receiver_id == "b";
      });
  CHECK(ab == 2);

  const AssembledSeries rebuilt =
      assemble_series(emitted, ratings, "g1", MissingPolicy::error);
  CHECK(rebuilt.series.roster == original.series.roster);
  for (int p = 0; p < 2; ++p) {
    CHECK(rebuilt.series.prompts[p].graph.weights() ==
          original.series.prompts[p].graph.weights());
  }
}

TEST_CASE("csv writers emit the pinned headers") {
  std::ostringstream comments;
  write_comments_csv(comments, {{"g1", 1, "x", "y"}});
  CHECK(comments.str() ==
        "community_id,prompt,commenter_id,receiver_id\ng1,1,x,y\n");

  std::ostringstream ratings;
  write_ratings_csv(ratings, {{"g1", 2, "x", "y", 5}});
  CHECK(ratings.str() ==
        "community_id,prompt,rater_id,receiver_id,overall_rating\ng1,2,x,y,5\n");
}

TEST_CASE("series JSON round-trips exactly") {
  DiffusionConfig config;
  const std::vector<CommunitySeries> dataset =
      generate_synthetic_dataset(config, {5}, 3, 2718);
  const CommunitySeries& series = dataset[0];

  const nlohmann::json doc = series_to_json(series);
  // Through text, as a file on disk would store it.
  const nlohmann::json reparsed = nlohmann::json::parse(doc.dump());
  const CommunitySeries rebuilt = series_from_json(reparsed);

  CHECK(rebuilt.roster == series.roster);
  REQUIRE(rebuilt.prompt_count() == series.prompt_count());
  for (int p = 0; p < series.prompt_count(); ++p) {
    CHECK(rebuilt.prompts[p].graph.weights() ==
          series.prompts[p].graph.weights());
    CHECK(rebuilt.prompts[p].ratings.values ==
          series.prompts[p].ratings.values);
  }

  nlohmann::json broken = doc;
  broken["prompts"][1]["prompt"] = 7;
  CHECK_THROWS_WITH_AS(series_from_json(broken), doctest::Contains("contiguous"),
                       std::runtime_error);
  nlohmann::json truncated = doc;
  truncated["prompts"][0]["ratings"] = nlohmann::json::array({1.0});
  CHECK_THROWS_AS(series_from_json(truncated), std::runtime_error);
}

TEST_CASE("synthetic datasets are deterministic and respect the shape") {
  DiffusionConfig config;
  config.diffusion_constant = 0.02;
  const std::vector<int> sizes = {26, 31, 26, 30, 22, 23};
  const std::vector<CommunitySeries> first =
      generate_synthetic_dataset(config, sizes, 5, 99);
  const std::vector<CommunitySeries> second =
      generate_synthetic_dataset(config, sizes, 5, 99);

  REQUIRE(first.size() == 6);
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(first[k].participant_count() == sizes[k]);
    CHECK(first[k].prompt_count() == 5);
    CHECK(first[k].roster == second[k].roster);
    for (int p = 0; p < 5; ++p) {
      CHECK(first[k].prompts[p].graph.weights() ==
            second[k].prompts[p].graph.weights());
      CHECK(first[k].prompts[p].ratings.values ==
            second[k].prompts[p].ratings.values);
      for (int i = 0; i < sizes[k]; ++i) {
        const double r = first[k].prompts[p].ratings.values[i];
        CHECK(r >= config.rating_min);
        CHECK(r <= config.rating_max);
      }
    }
  }

  CHECK_THROWS_AS(generate_synthetic_dataset(config, sizes, 1, 99),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_synthetic_dataset(config, {0}, 5, 99),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_synthetic_dataset(config, {}, 5, 99),
                  std::invalid_argument);
}

TEST_CASE("community ids are the sorted union over both event lists") {
  const ParsedEvents events = parse_strings(
      std::string(kCommentHeader) + "g2,1,a,b\n",
      std::string(kRatingHeader) + "g1,1,a,b,3\ng2,1,a,b,4\n");
  CHECK(community_ids(events) == std::vector<std::string>{"g1", "g2"});
}
