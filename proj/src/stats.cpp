#include "ptparl/stats.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "ptparl/textnorm.hpp"

namespace ptparl {

int word_count(const Utterance& u) {
    return text::word_count(u.text);
}

namespace {

DistributionSummary summarize(const std::map<std::int64_t, std::int64_t>& hist,
                              bool sample_stddev) {
    DistributionSummary s;
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& [value, count] : hist) {
        s.n += count;
        sum += static_cast<double>(value) * static_cast<double>(count);
        sum_sq += static_cast<double>(value) * static_cast<double>(value) *
                  static_cast<double>(count);
        s.max = std::max(s.max, value);
    }
    if (s.n == 0) return s;
    s.mean = sum / static_cast<double>(s.n);

    double variance = (sum_sq - static_cast<double>(s.n) * s.mean * s.mean);
    std::int64_t denom = sample_stddev ? s.n - 1 : s.n;
    s.stddev = denom > 0 ? std::sqrt(std::max(0.0, variance / static_cast<double>(denom)))
                         : 0.0;

    auto value_at = [&](std::int64_t rank) {  // 1-based
        std::int64_t seen = 0;
        for (const auto& [value, count] : hist) {
            seen += count;
            if (seen >= rank) return value;
        }
        return hist.rbegin()->first;
    };
    if (s.n % 2 == 1)
        s.median = static_cast<double>(value_at(s.n / 2 + 1));
    else
        s.median = (static_cast<double>(value_at(s.n / 2)) +
                    static_cast<double>(value_at(s.n / 2 + 1))) / 2.0;
    return s;
}

std::string format2(double v) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(2);
    out << v;
    return out.str();
}

}  // namespace

void StatsAccumulator::add(const AnnotatedDebate& d) {
    auto key = std::make_tuple(d.meta.legislature, d.meta.session, d.meta.number);
    if (!seen_.insert(key).second) return;  // distinct (L, S, N) triples only

    std::int64_t n_utterances = 0;
    std::int64_t n_words = 0;
    for (const auto& [page, utterances] : d.pages) {
        for (const Utterance& u : utterances) {
            std::int64_t words = word_count(u);
            ++words_per_utterance_hist_[words];
            n_words += words;
            ++n_utterances;
        }
    }
    ++utterances_per_debate_hist_[n_utterances];

    LegislatureAcc& leg = legislatures_[d.meta.legislature];
    if (leg.n_debates == 0 || d.meta.date < leg.start_date)
        leg.start_date = d.meta.date;
    if (leg.n_debates == 0 || d.meta.date > leg.end_date)
        leg.end_date = d.meta.date;
    ++leg.n_debates;
    leg.n_utterances += n_utterances;
    leg.n_words += n_words;
}

void StatsAccumulator::merge(const StatsAccumulator& other) {
    for (const auto& key : other.seen_) seen_.insert(key);
    for (const auto& [leg_no, leg] : other.legislatures_) {
        LegislatureAcc& mine = legislatures_[leg_no];
        if (mine.n_debates == 0 || leg.start_date < mine.start_date)
            mine.start_date = leg.start_date;
        if (mine.n_debates == 0 || leg.end_date > mine.end_date)
            mine.end_date = leg.end_date;
        mine.n_debates += leg.n_debates;
        mine.n_utterances += leg.n_utterances;
        mine.n_words += leg.n_words;
    }
    for (const auto& [value, count] : other.utterances_per_debate_hist_)
        utterances_per_debate_hist_[value] += count;
    for (const auto& [value, count] : other.words_per_utterance_hist_)
        words_per_utterance_hist_[value] += count;
}

CorpusStats StatsAccumulator::finalize(bool sample_stddev) const {
    CorpusStats out;
    out.n_debates = static_cast<std::int64_t>(seen_.size());
    if (out.n_debates > 0) {
        out.utterances_per_debate = summarize(utterances_per_debate_hist_, sample_stddev);
        out.words_per_utterance = summarize(words_per_utterance_hist_, sample_stddev);
    }
    for (const auto& [leg_no, leg] : legislatures_) {
        LegislatureRow row;
        row.legislature = leg_no;
        row.start_date = leg.start_date;
        row.end_date = leg.end_date;
        row.n_debates = leg.n_debates;
        row.mean_utterances_per_debate =
            leg.n_debates ? static_cast<double>(leg.n_utterances) /
                                static_cast<double>(leg.n_debates)
                          : 0.0;
        row.mean_words_per_utterance =
            leg.n_utterances ? static_cast<double>(leg.n_words) /
                                   static_cast<double>(leg.n_utterances)
                             : 0.0;
        out.per_legislature.push_back(std::move(row));
    }
    return out;
}

std::string CorpusStats::to_csv() const {
    std::string out =
        "legislature,start_date,end_date,n_debates,"
        "avg_utterances_per_debate,avg_words_per_utterance\n";
    for (const LegislatureRow& row : per_legislature) {
        out += std::to_string(row.legislature) + "," + row.start_date + "," +
               row.end_date + "," + std::to_string(row.n_debates) + "," +
               format2(row.mean_utterances_per_debate) + "," +
               format2(row.mean_words_per_utterance) + "\n";
    }
    return out;
}

std::string CorpusStats::to_json(bool sample_stddev) const {
    using nlohmann::json;
    auto dist = [](const std::optional<DistributionSummary>& s) -> json {
        if (!s) return nullptr;
        return json{{"n", s->n},       {"mean", s->mean},
                    {"median", s->median}, {"stddev", s->stddev},
                    {"max", s->max}};
    };
    json legs = json::array();
    for (const LegislatureRow& row : per_legislature) {
        legs.push_back(json{
            {"legislature", row.legislature},
            {"start_date", row.start_date},
            {"end_date", row.end_date},
            {"n_debates", row.n_debates},
            {"avg_utterances_per_debate", row.mean_utterances_per_debate},
            {"avg_words_per_utterance", row.mean_words_per_utterance},
        });
    }
    json j{
        {"note", "all emitted utterances are counted, including the president's"},
        {"stddev_convention", sample_stddev ? "sample" : "population"},
        {"n_debates", n_debates},
        {"utterances_per_debate", dist(utterances_per_debate)},
        {"words_per_utterance", dist(words_per_utterance)},
        {"per_legislature", legs},
    };
    return j.dump(2) + "\n";
}

}  // namespace ptparl
