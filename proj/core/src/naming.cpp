#include "storyboard/naming.hpp"

#include "storyboard/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>

namespace storyboard {

bool is_obfuscated(std::string_view name)
{
    auto simple = simple_class_name(name);
    auto letters = std::count_if(simple.begin(), simple.end(), [](char c) {
        return std::isalpha(static_cast<unsigned char>(c)) != 0;
    });
    return letters < 3;
}

std::vector<std::string> split_identifier(std::string_view name,
                                          const std::set<std::string>& stopwords)
{
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty() && !stopwords.count(cur)) {
            out.push_back(cur);
        }
        cur.clear();
    };
    auto is_upper = [](char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; };
    auto is_lower = [](char c) { return std::islower(static_cast<unsigned char>(c)) != 0; };
    auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    for (std::size_t i = 0; i < name.size(); ++i) {
        char c = name[i];
        if (!std::isalnum(static_cast<unsigned char>(c))) {
            flush();
            continue;
        }
        if (i > 0 && !cur.empty()) {
            char p = name[i - 1];
            bool hump = is_upper(c) && (is_lower(p) || is_digit(p));
            // "HTMLParser": break before the last capital of a run.
            bool acronym_end = is_upper(c) && is_upper(p) && i + 1 < name.size()
                               && is_lower(name[i + 1]);
            bool digit_edge = is_digit(c) != is_digit(p);
            if (hump || acronym_end || digit_edge) {
                flush();
            }
        }
        cur.push_back(char(std::tolower(static_cast<unsigned char>(c))));
    }
    flush();
    return out;
}

bool Corpus::add(CorpusEntry entry)
{
    if (!keys_.emplace(entry.app_id, entry.activity_name).second) {
        return false;
    }
    ++frequency_[entry.activity_name];
    entries_.push_back(std::move(entry));
    return true;
}

std::size_t Corpus::frequency(const std::string& name) const
{
    auto it = frequency_.find(name);
    return it == frequency_.end() ? 0 : it->second;
}

Corpus parse_corpus(std::istream& in, const std::string& name)
{
    Corpus corpus;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (std::all_of(line.begin(), line.end(), [](char c) {
                return std::isspace(static_cast<unsigned char>(c));
            })) {
            continue;
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        }
        catch (const nlohmann::json::parse_error& e) {
            throw ParseError(name, lineno, e.what());
        }
        auto field = [&](const char* key) {
            if (!j.is_object() || !j.contains(key) || !j[key].is_string()) {
                throw ParseError(name, lineno,
                                 std::string("missing string field '") + key + "'");
            }
            return j[key].get<std::string>();
        };
        CorpusEntry e{field("app_id"), field("activity_name"),
                      field("layout_name"), {}};
        if (e.activity_name.empty() || is_obfuscated(e.activity_name)) {
            throw ParseError(name, lineno,
                             "activity name '" + e.activity_name
                                     + "' is empty or obfuscated");
        }
        try {
            e.tree = parse_tree(field("tree"));
        }
        catch (const ParseError& pe) {
            throw ParseError(name, lineno, std::string("tree: ") + pe.what());
        }
        corpus.add(std::move(e));
    }
    return corpus;
}

Corpus load_corpus(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IOError("cannot read corpus " + path.string());
    }
    return parse_corpus(in, path.string());
}

void write_corpus(std::ostream& out, const Corpus& corpus)
{
    for (const auto& e : corpus.entries()) {
        nlohmann::ordered_json j;
        j["app_id"] = e.app_id;
        j["activity_name"] = e.activity_name;
        j["layout_name"] = e.layout_name;
        j["tree"] = format_tree(e.tree);
        out << j.dump() << '\n';
    }
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IOError("cannot write corpus " + path.string());
    }
    write_corpus(out, corpus);
    if (!out) {
        throw IOError("write failed: " + path.string());
    }
}

Corpus build_corpus(const std::vector<AppBundle>& bundles,
                    const std::filesystem::path& out)
{
    Corpus corpus;
    for (const auto& b : bundles) {
        for (const auto& name : b.manifest.declared_activities) {
            const auto* cls = b.code.find(name);
            if (!cls || cls->undecompiled || !cls->layout || is_obfuscated(name)
                || detect_layout_type(*cls) != LayoutKind::static_layout) {
                continue;
            }
            const auto* doc = b.find_layout(*cls->layout);
            if (!doc) {
                continue;
            }
            corpus.add({b.app_id, simple_class_name(name), doc->name,
                        extract_layout_tree(*doc)});
        }
    }
    if (!out.empty()) {
        save_corpus(corpus, out);
    }
    return corpus;
}

std::string_view to_string(MatchKind kind)
{
    switch (kind) {
    case MatchKind::keyword: return "keyword";
    case MatchKind::top_frequency: return "top_frequency";
    case MatchKind::not_obfuscated: return "not_obfuscated";
    case MatchKind::no_candidates: return "no_candidates";
    }
    return "no_candidates";
}

bool tokens_match(const std::vector<std::string>& a,
                  const std::vector<std::string>& b, std::size_t min_prefix)
{
    for (const auto& x : a) {
        for (const auto& y : b) {
            const auto& shorter = x.size() <= y.size() ? x : y;
            const auto& longer = x.size() <= y.size() ? y : x;
            if (shorter.size() >= min_prefix && longer.starts_with(shorter)) {
                return true;
            }
        }
    }
    return false;
}

InferenceResult infer_semantic_name(const std::string& original_name,
                                    const LayoutTree& target,
                                    const std::string& layout_name,
                                    const Corpus& corpus,
                                    const InferenceOptions& options)
{
    InferenceResult r;
    r.original_name = original_name;
    r.inferred_name = original_name;
    if (!is_obfuscated(original_name)) {
        r.matched_by = MatchKind::not_obfuscated;
        return r;
    }

    std::map<std::string, int> best;
    for (const auto& e : corpus.entries()) {
        int d = tree_edit_distance(target, e.tree);
        if (d >= options.threshold) {
            continue;
        }
        auto [it, fresh] = best.emplace(e.activity_name, d);
        if (!fresh) {
            it->second = std::min(it->second, d);
        }
    }
    for (const auto& [name, d] : best) {
        r.candidates.push_back({name, d, corpus.frequency(name)});
    }
    std::sort(r.candidates.begin(), r.candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                  if (a.frequency != b.frequency) {
                      return a.frequency > b.frequency;
                  }
                  return a.name < b.name;
              });
    if (r.candidates.empty()) {
        r.matched_by = MatchKind::no_candidates;
        return r;
    }

    auto layout_tokens = split_identifier(layout_name, options.stopwords);
    for (const auto& c : r.candidates) {
        if (tokens_match(split_identifier(c.name, options.stopwords),
                         layout_tokens, options.min_prefix)) {
            r.inferred_name = c.name;
            r.matched_by = MatchKind::keyword;
            return r;
        }
    }
    r.inferred_name = r.candidates.front().name;
    r.matched_by = MatchKind::top_frequency;
    return r;
}

} // namespace storyboard
