#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "peernet/diffusion.hpp"
#include "peernet/graph.hpp"

namespace peernet {

/// One comment left by `commenter_id` on a video of `receiver_id`.
/// Direction is kept in the event record even though assembly discards it.
struct CommentEvent {
  std::string community_id;
  int prompt = 0;
  std::string commenter_id;
  std::string receiver_id;
};

/// One overall performance rating on the 1-5 Likert scale.
struct RatingEvent {
  std::string community_id;
  int prompt = 0;
  std::string rater_id;
  std::string receiver_id;
  int overall_rating = 0;
};

struct ParsedEvents {
  std::vector<CommentEvent> comments;
  std::vector<RatingEvent> ratings;
};

/// Aligned per-prompt (graph, signal) pairs for one community. The roster
/// fixes the participant-id to index mapping; prompts are contiguous
/// starting at 1, so prompts[p - 1] belongs to prompt p.
struct CommunitySeries {
  std::vector<std::string> roster;
  struct Prompt {
    InteractionGraph graph;
    RatingSignal ratings;
  };
  std::vector<Prompt> prompts;

  int participant_count() const { return static_cast<int>(roster.size()); }
  int prompt_count() const { return static_cast<int>(prompts.size()); }
};

enum class MissingPolicy { error, community_mean };

/// Record of one imputed rating under MissingPolicy::community_mean.
struct Imputation {
  std::string participant_id;
  int prompt = 0;
  double value = 0.0;
};

struct AssembledSeries {
  CommunitySeries series;
  std::vector<Imputation> imputations;
};

/// Parses the two event CSVs (headers required, validated). Stream names
/// only label error messages. Throws std::runtime_error naming file, line
/// and field for malformed rows: wrong arity, empty fields, non-integer or
/// out-of-range ratings, prompts < 1, self-comments.
ParsedEvents parse_events(std::istream& comments, std::string_view comments_name,
                          std::istream& ratings, std::string_view ratings_name);

/// Convenience overload opening both files from disk.
ParsedEvents parse_events_files(const std::string& comments_path,
                                const std::string& ratings_path);

/// Sorted unique community ids appearing in either event list.
std::vector<std::string> community_ids(const ParsedEvents& events);

/// Builds the per-prompt graph/signal series of one community.
///
/// The roster is the lexicographically sorted union of every participant id
/// in the community's events. Weights count comments between two
/// participants in a prompt summed over both directions; ratings average
/// all overall ratings a participant received in the prompt. Participants
/// unrated in some prompt are an error under MissingPolicy::error and are
/// imputed with that prompt's mean over rated participants (and reported)
/// under MissingPolicy::community_mean. Throws std::runtime_error when the
/// community has no events, prompt indices are not contiguous from 1, or a
/// prompt has no ratings at all.
AssembledSeries assemble_series(const std::vector<CommentEvent>& comments,
                                const std::vector<RatingEvent>& ratings,
                                const std::string& community_id,
                                MissingPolicy missing_policy);

/// Expands a series back into directed comment events: weight w between
/// roster[i] and roster[j] (i < j) becomes w events roster[i] -> roster[j].
std::vector<CommentEvent> emit_comment_events(const CommunitySeries& series,
                                              const std::string& community_id);

void write_comments_csv(std::ostream& out,
                        const std::vector<CommentEvent>& events);
void write_ratings_csv(std::ostream& out,
                       const std::vector<RatingEvent>& events);

/// Series JSON: {"roster": [...], "prompts": [{"prompt", "weights",
/// "ratings"}, ...]} with integer weights and full-precision ratings.
nlohmann::json series_to_json(const CommunitySeries& series);
CommunitySeries series_from_json(const nlohmann::json& doc);

/// Draws one community per entry of `community_sizes`: a fresh weight-1
/// Erdos-Renyi graph per prompt, ratings initialized uniform on
/// [rating_min, rating_max] and evolved with the diffusion step. Community
/// k uses Rng::substream(seed, k). The returned ratings are the model's
/// real-valued signals, not re-quantized to the Likert grid. `config`
/// supplies edge_prob, the diffusion constant, drift and bounds; its
/// node_count/horizon/realizations/seed fields are ignored in favor of the
/// explicit arguments. Requires prompts >= 2.
std::vector<CommunitySeries> generate_synthetic_dataset(
    const DiffusionConfig& config, const std::vector<int>& community_sizes,
    int prompts, std::uint64_t seed);

}  // namespace peernet
