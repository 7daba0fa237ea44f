#include "peernet/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace peernet {

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

[[noreturn]] void fail_row(std::string_view file, int line,
                           const std::string& what) {
  throw std::runtime_error(std::string(file) + ":" + std::to_string(line) +
                           ": " + what);
}

int parse_int_field(std::string_view file, int line, const std::string& value,
                    const std::string& field_name) {
  std::size_t consumed = 0;
  int parsed = 0;
  try {
    parsed = std::stoi(value, &consumed);
  } catch (const std::exception&) {
    fail_row(file, line, "field '" + field_name + "' is not an integer: '" +
                             value + "'");
  }
  if (consumed != value.size()) {
    fail_row(file, line, "field '" + field_name + "' is not an integer: '" +
                             value + "'");
  }
  return parsed;
}

std::string require_field(std::string_view file, int line,
                          const std::string& value,
                          const std::string& field_name) {
  if (value.empty()) {
    fail_row(file, line, "field '" + field_name + "' is empty");
  }
  return value;
}

// Reads one logical CSV line, tolerating trailing \r from CRLF files.
bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

void check_header(std::istream& in, std::string_view file,
                  const std::string& expected) {
  std::string line;
  if (!read_line(in, line)) {
    throw std::runtime_error(std::string(file) + ": missing header row");
  }
  if (line != expected) {
    throw std::runtime_error(std::string(file) + ": bad header, expected '" +
                             expected + "' but found '" + line + "'");
  }
}

}  // namespace

ParsedEvents parse_events(std::istream& comments, std::string_view comments_name,
                          std::istream& ratings, std::string_view ratings_name) {
  ParsedEvents events;

  check_header(comments, comments_name,
               "community_id,prompt,commenter_id,receiver_id");
  std::string line;
  int line_no = 1;
  while (read_line(comments, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_row(line);
    if (fields.size() != 4) {
      fail_row(comments_name, line_no,
               "expected 4 fields, found " + std::to_string(fields.size()));
    }
    CommentEvent event;
    event.community_id =
        require_field(comments_name, line_no, fields[0], "community_id");
    event.prompt = parse_int_field(comments_name, line_no, fields[1], "prompt");
    if (event.prompt < 1) {
      fail_row(comments_name, line_no, "field 'prompt' must be >= 1");
    }
    event.commenter_id =
        require_field(comments_name, line_no, fields[2], "commenter_id");
    event.receiver_id =
        require_field(comments_name, line_no, fields[3], "receiver_id");
    if (event.commenter_id == event.receiver_id) {
      fail_row(comments_name, line_no,
               "self-comment by '" + event.commenter_id + "'");
    }
    events.comments.push_back(std::move(event));
  }

  check_header(ratings, ratings_name,
               "community_id,prompt,rater_id,receiver_id,overall_rating");
  line_no = 1;
  while (read_line(ratings, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_row(line);
    if (fields.size() != 5) {
      fail_row(ratings_name, line_no,
               "expected 5 fields, found " + std::to_string(fields.size()));
    }
    RatingEvent event;
    event.community_id =
        require_field(ratings_name, line_no, fields[0], "community_id");
    event.prompt = parse_int_field(ratings_name, line_no, fields[1], "prompt");
    if (event.prompt < 1) {
      fail_row(ratings_name, line_no, "field 'prompt' must be >= 1");
    }
    event.rater_id =
        require_field(ratings_name, line_no, fields[2], "rater_id");
    event.receiver_id =
        require_field(ratings_name, line_no, fields[3], "receiver_id");
    event.overall_rating =
        parse_int_field(ratings_name, line_no, fields[4], "overall_rating");
    if (event.overall_rating < 1 || event.overall_rating > 5) {
      fail_row(ratings_name, line_no,
               "rating out of range at line " + std::to_string(line_no) +
                   ": field 'overall_rating' must be in [1, 5], got " +
                   std::to_string(event.overall_rating));
    }
    events.ratings.push_back(std::move(event));
  }
  return events;
}

ParsedEvents parse_events_files(const std::string& comments_path,
                                const std::string& ratings_path) {
  std::ifstream comments(comments_path);
  if (!comments) {
    throw std::runtime_error("cannot open comments file: " + comments_path);
  }
  std::ifstream ratings(ratings_path);
  if (!ratings) {
    throw std::runtime_error("cannot open ratings file: " + ratings_path);
  }
  return parse_events(comments, comments_path, ratings, ratings_path);
}

std::vector<std::string> community_ids(const ParsedEvents& events) {
  std::set<std::string> ids;
  for (const auto& event : events.comments) ids.insert(event.community_id);
  for (const auto& event : events.ratings) ids.insert(event.community_id);
  return {ids.begin(), ids.end()};
}

AssembledSeries assemble_series(const std::vector<CommentEvent>& comments,
                                const std::vector<RatingEvent>& ratings,
                                const std::string& community_id,
                                MissingPolicy missing_policy) {
  std::set<std::string> participants;
  std::set<int> prompt_set;
  for (const auto& event : comments) {
    if (event.community_id != community_id) continue;
    participants.insert(event.commenter_id);
    participants.insert(event.receiver_id);
    prompt_set.insert(event.prompt);
  }
  bool any_rating = false;
  for (const auto& event : ratings) {
    if (event.community_id != community_id) continue;
    any_rating = true;
    participants.insert(event.rater_id);
    participants.insert(event.receiver_id);
    prompt_set.insert(event.prompt);
  }
  if (!any_rating) {
    throw std::runtime_error("community '" + community_id +
                             "' has no rating events");
  }

  const int prompt_count = *prompt_set.rbegin();
  if (static_cast<int>(prompt_set.size()) != prompt_count ||
      *prompt_set.begin() != 1) {
    std::string seen;
    for (int p : prompt_set) seen += (seen.empty() ? "" : ",") + std::to_string(p);
    throw std::runtime_error("community '" + community_id +
                             "': prompts must be contiguous from 1, saw {" +
                             seen + "}");
  }

  AssembledSeries result;
  result.series.roster.assign(participants.begin(), participants.end());
  const int n = result.series.participant_count();
  std::map<std::string, int> index;
  for (int i = 0; i < n; ++i) index[result.series.roster[i]] = i;

  std::vector<Eigen::MatrixXi> weights(prompt_count,
                                       Eigen::MatrixXi::Zero(n, n));
  for (const auto& event : comments) {
    if (event.community_id != community_id) continue;
    const int i = index.at(event.commenter_id);
    const int j = index.at(event.receiver_id);
    weights[event.prompt - 1](i, j) += 1;
    weights[event.prompt - 1](j, i) += 1;
  }

  std::vector<Eigen::VectorXd> rating_sums(prompt_count,
                                           Eigen::VectorXd::Zero(n));
  std::vector<Eigen::VectorXi> rating_counts(prompt_count,
                                             Eigen::VectorXi::Zero(n));
  for (const auto& event : ratings) {
    if (event.community_id != community_id) continue;
    const int i = index.at(event.receiver_id);
    rating_sums[event.prompt - 1][i] += event.overall_rating;
    rating_counts[event.prompt - 1][i] += 1;
  }

  for (int p = 1; p <= prompt_count; ++p) {
    Eigen::VectorXd values(n);
    double rated_sum = 0.0;
    int rated_count = 0;
    for (int i = 0; i < n; ++i) {
      if (rating_counts[p - 1][i] > 0) {
        values[i] = rating_sums[p - 1][i] / rating_counts[p - 1][i];
        rated_sum += values[i];
        ++rated_count;
      }
    }
    if (rated_count == 0) {
      throw std::runtime_error("community '" + community_id + "', prompt " +
                               std::to_string(p) +
                               ": no ratings; cannot impute");
    }
    for (int i = 0; i < n; ++i) {
      if (rating_counts[p - 1][i] > 0) continue;
      if (missing_policy == MissingPolicy::error) {
        throw std::runtime_error("participant '" + result.series.roster[i] +
                                 "' has no ratings in prompt " +
                                 std::to_string(p) + " of community '" +
                                 community_id + "'");
      }
      values[i] = rated_sum / rated_count;
      result.imputations.push_back(
          {result.series.roster[i], p, values[i]});
    }
    result.series.prompts.push_back(
        {InteractionGraph(std::move(weights[p - 1])),
         RatingSignal(std::move(values))});
  }
  return result;
}

std::vector<CommentEvent> emit_comment_events(const CommunitySeries& series,
                                              const std::string& community_id) {
  std::vector<CommentEvent> events;
  for (int p = 1; p <= series.prompt_count(); ++p) {
    const Eigen::MatrixXi& weights = series.prompts[p - 1].graph.weights();
    for (int i = 0; i < series.participant_count(); ++i) {
      for (int j = i + 1; j < series.participant_count(); ++j) {
        for (int repeat = 0; repeat < weights(i, j); ++repeat) {
          events.push_back(
              {community_id, p, series.roster[i], series.roster[j]});
        }
      }
    }
  }
  return events;
}

void write_comments_csv(std::ostream& out,
                        const std::vector<CommentEvent>& events) {
  out << "community_id,prompt,commenter_id,receiver_id\n";
  for (const auto& event : events) {
    out << event.community_id << ',' << event.prompt << ','
        << event.commenter_id << ',' << event.receiver_id << '\n';
  }
}

void write_ratings_csv(std::ostream& out,
                       const std::vector<RatingEvent>& events) {
  out << "community_id,prompt,rater_id,receiver_id,overall_rating\n";
  for (const auto& event : events) {
    out << event.community_id << ',' << event.prompt << ',' << event.rater_id
        << ',' << event.receiver_id << ',' << event.overall_rating << '\n';
  }
}

nlohmann::json series_to_json(const CommunitySeries& series) {
  nlohmann::json prompts = nlohmann::json::array();
  for (int p = 1; p <= series.prompt_count(); ++p) {
    const auto& record = series.prompts[p - 1];
    nlohmann::json weights = nlohmann::json::array();
    for (int i = 0; i < series.participant_count(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < series.participant_count(); ++j) {
        row.push_back(record.graph.weights()(i, j));
      }
      weights.push_back(std::move(row));
    }
    nlohmann::json ratings = nlohmann::json::array();
    for (int i = 0; i < series.participant_count(); ++i) {
      ratings.push_back(record.ratings.values[i]);
    }
    prompts.push_back({{"prompt", p},
                       {"weights", std::move(weights)},
                       {"ratings", std::move(ratings)}});
  }
  return {{"roster", series.roster}, {"prompts", std::move(prompts)}};
}

CommunitySeries series_from_json(const nlohmann::json& doc) {
  CommunitySeries series;
  series.roster = doc.at("roster").get<std::vector<std::string>>();
  const int n = series.participant_count();
  const auto& prompts = doc.at("prompts");
  int expected_prompt = 0;
  for (const auto& entry : prompts) {
    ++expected_prompt;
    if (entry.at("prompt").get<int>() != expected_prompt) {
      throw std::runtime_error(
          "series JSON: prompts must be contiguous from 1");
    }
    const auto& weight_rows = entry.at("weights");
    if (static_cast<int>(weight_rows.size()) != n) {
      throw std::runtime_error("series JSON: weight matrix size mismatch");
    }
    Eigen::MatrixXi weights(n, n);
    for (int i = 0; i < n; ++i) {
      const auto& row = weight_rows.at(i);
      if (static_cast<int>(row.size()) != n) {
        throw std::runtime_error("series JSON: weight row size mismatch");
      }
      for (int j = 0; j < n; ++j) {
        weights(i, j) = row.at(j).get<int>();
      }
    }
    const auto& rating_values = entry.at("ratings");
    if (static_cast<int>(rating_values.size()) != n) {
      throw std::runtime_error("series JSON: rating vector size mismatch");
    }
    Eigen::VectorXd ratings(n);
    for (int i = 0; i < n; ++i) {
      ratings[i] = rating_values.at(i).get<double>();
    }
    series.prompts.push_back(
        {InteractionGraph(std::move(weights)), RatingSignal(std::move(ratings))});
  }
  if (series.prompts.empty()) {
    throw std::runtime_error("series JSON: no prompts");
  }
  return series;
}

std::vector<CommunitySeries> generate_synthetic_dataset(
    const DiffusionConfig& config, const std::vector<int>& community_sizes,
    int prompts, std::uint64_t seed) {
  if (community_sizes.empty()) {
    throw std::invalid_argument("generate_synthetic_dataset: no community sizes");
  }
  for (int size : community_sizes) {
    if (size < 1) {
      throw std::invalid_argument(
          "generate_synthetic_dataset: community sizes must be positive");
    }
  }
  if (prompts < 2) {
    throw std::invalid_argument(
        "generate_synthetic_dataset: need at least 2 prompts");
  }

  std::vector<CommunitySeries> dataset;
  dataset.reserve(community_sizes.size());
  for (std::size_t k = 0; k < community_sizes.size(); ++k) {
    const int n = community_sizes[k];
    DiffusionConfig local = config;
    local.node_count = n;
    local.horizon = prompts;
    local.realizations = 1;
    local.validate();

    Rng rng = Rng::substream(seed, k);
    CommunitySeries series;
    series.roster.reserve(n);
    // Zero-padded ids keep the lexicographic roster in index order.
    const int width = static_cast<int>(std::to_string(n).size());
    for (int i = 1; i <= n; ++i) {
      std::string id = std::to_string(i);
      series.roster.push_back("p" + std::string(width - id.size(), '0') + id);
    }

    Eigen::VectorXd values(n);
    for (int i = 0; i < n; ++i) {
      values[i] = rng.uniform(local.rating_min, local.rating_max);
    }
    RatingSignal signal(std::move(values));
    for (int p = 1; p <= prompts; ++p) {
      InteractionGraph graph = generate_er_graph(n, local.edge_prob, rng);
      const LaplacianMatrix laplacian = build_laplacian(graph);
      RatingSignal next = p < prompts ? step(signal, laplacian, local, rng)
                                      : RatingSignal();
      series.prompts.push_back({std::move(graph), std::move(signal)});
      signal = std::move(next);
    }
    dataset.push_back(std::move(series));
  }
  return dataset;
}

}  // namespace peernet
