#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ptparl/model.hpp"

namespace ptparl {

int word_count(const Utterance& u);

// mean/median/sd/max of an integer-valued distribution
struct DistributionSummary {
    std::int64_t n = 0;
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;
    std::int64_t max = 0;
};

struct LegislatureRow {
    int legislature = 0;
    std::string start_date;
    std::string end_date;
    std::int64_t n_debates = 0;
    double mean_utterances_per_debate = 0.0;
    double mean_words_per_utterance = 0.0;
};

struct CorpusStats {
    std::int64_t n_debates = 0;
    std::optional<DistributionSummary> utterances_per_debate;
    std::optional<DistributionSummary> words_per_utterance;
    std::vector<LegislatureRow> per_legislature;

    // Table-style CSV (one row per legislature; means to 2 decimals).
    std::string to_csv() const;
    // Global distribution summaries plus the per-legislature rows.
    std::string to_json(bool sample_stddev) const;
};

// Mergeable sufficient statistics: counts, sums, sums of squares, maxima,
// and exact integer histograms for the medians. Shards accumulate
// independently, merge associatively, and finalize once. A debate identity
// (legislature, session, number) seen twice is counted once; merge assumes
// disjoint shards.
class StatsAccumulator {
public:
    void add(const AnnotatedDebate& d);
    void merge(const StatsAccumulator& other);
    CorpusStats finalize(bool sample_stddev = false) const;

private:
    struct LegislatureAcc {
        std::string start_date;
        std::string end_date;
        std::int64_t n_debates = 0;
        std::int64_t n_utterances = 0;
        std::int64_t n_words = 0;
    };

    std::set<std::tuple<int, int, int>> seen_;
    std::map<int, LegislatureAcc> legislatures_;
    std::map<std::int64_t, std::int64_t> utterances_per_debate_hist_;
    std::map<std::int64_t, std::int64_t> words_per_utterance_hist_;
};

template <typename Range>
CorpusStats compute_stats(const Range& corpus, bool sample_stddev = false) {
    StatsAccumulator acc;
    for (const AnnotatedDebate& d : corpus) acc.add(d);
    return acc.finalize(sample_stddev);
}

}  // namespace ptparl
