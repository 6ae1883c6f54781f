#ifndef STORYBOARD_NAMING_HPP
#define STORYBOARD_NAMING_HPP

#include "storyboard/bundle.hpp"
#include "storyboard/layout_tree.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace storyboard {

/// True when the simple class name has fewer than three letters. Digits,
/// underscores and package qualifiers are not counted.
bool is_obfuscated(std::string_view name);

/// Lower-case tokens of an identifier, split at camel-case humps, digit
/// boundaries and `_`, `-`, `.`, `$`. `stopwords` are dropped.
std::vector<std::string> split_identifier(std::string_view name,
                                          const std::set<std::string>& stopwords = {});

struct CorpusEntry {
    std::string app_id;
    std::string activity_name;
    std::string layout_name;
    LayoutTree tree;

    friend bool operator==(const CorpusEntry&, const CorpusEntry&) = default;
};

class Corpus {
public:
    Corpus() = default;

    /// Adds an entry unless (app_id, activity_name) is already present.
    bool add(CorpusEntry entry);

    const std::vector<CorpusEntry>& entries() const noexcept { return entries_; }
    const std::map<std::string, std::size_t>& name_frequency() const noexcept
    {
        return frequency_;
    }
    std::size_t frequency(const std::string& name) const;
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }

private:
    std::vector<CorpusEntry> entries_;
    std::map<std::string, std::size_t> frequency_;
    std::set<std::pair<std::string, std::string>> keys_;
};

/// Line-delimited JSON, one object per entry with keys in the order
/// app_id, activity_name, layout_name, tree. Blank lines are ignored.
/// Throws ParseError with the offending line.
Corpus parse_corpus(std::istream& in, const std::string& name);
Corpus load_corpus(const std::filesystem::path& path);
void write_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

/// One entry per non-obfuscated activity with a static layout, keyed by
/// its simple class name. Written to `out` when it is non-empty.
Corpus build_corpus(const std::vector<AppBundle>& bundles,
                    const std::filesystem::path& out = {});

enum class MatchKind { keyword, top_frequency, not_obfuscated, no_candidates };

std::string_view to_string(MatchKind kind);

struct Candidate {
    std::string name;
    int ted = 0;              // smallest distance over the name's entries
    std::size_t frequency = 0;

    friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct InferenceResult {
    std::string original_name;
    std::string inferred_name;
    std::vector<Candidate> candidates; // ranked
    MatchKind matched_by = MatchKind::no_candidates;
};

struct InferenceOptions {
    int threshold = 5;
    std::set<std::string> stopwords{"activity", "layout"};
    /// Shortest token that may take part in a prefix match.
    std::size_t min_prefix = 3;
};

/// Candidates are corpus names with distance below the threshold, ranked
/// by frequency (descending) then name. The first candidate sharing a
/// prefix-matched token with the layout name wins; otherwise the most
/// frequent candidate is taken.
InferenceResult infer_semantic_name(const std::string& original_name,
                                    const LayoutTree& target,
                                    const std::string& layout_name,
                                    const Corpus& corpus,
                                    const InferenceOptions& options = {});

/// True when some pair of tokens is prefix-related and the shorter one has
/// at least `min_prefix` characters.
bool tokens_match(const std::vector<std::string>& a,
                  const std::vector<std::string>& b, std::size_t min_prefix = 3);

} // namespace storyboard

#endif
