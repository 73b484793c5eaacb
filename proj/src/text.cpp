#include "cocite/text.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <unordered_set>

namespace cocite::text {
namespace {

const std::unordered_set<std::string_view>& function_words() {
    static const std::unordered_set<std::string_view> words = {
        // articles, determiners, quantifiers
        "a", "an", "the", "this", "that", "these", "those", "some", "any", "each", "every", "all", "both", "either",
        "neither", "no", "not", "nor", "such", "same", "other", "another", "many", "much", "more", "most", "less",
        "least", "few", "fewer", "several", "own", "what", "which", "who", "whom", "whose", "whether",
        // pronouns
        "i", "we", "you", "he", "she", "it", "they", "me", "us", "him", "her", "them", "my", "our", "your", "his",
        "its", "their", "ours", "theirs", "itself", "themselves", "ourselves", "one", "ones",
        // prepositions, conjunctions
        "about", "above", "across", "after", "against", "along", "among", "amongst", "around", "as", "at",
        "before", "behind", "below", "beneath", "beside", "besides", "between", "beyond", "by", "despite", "down",
        "during", "except", "for", "from", "in", "inside", "into", "like", "near", "of", "off", "on", "onto", "out",
        "outside", "over", "per", "since", "than", "through", "throughout", "to", "toward", "towards", "under",
        "underlying", "unlike", "until", "up", "upon", "via", "with", "within", "without", "and", "or", "but", "if",
        "so", "because", "while", "whereas", "although", "though", "unless", "where", "when", "whenever", "how",
        "why", "then", "once", "thereby",
        // auxiliaries and modals
        "is", "are", "was", "were", "be", "been", "being", "am", "has", "have", "had", "having", "do", "does", "did",
        "doing", "can", "could", "may", "might", "will", "would", "shall", "should", "must", "cannot",
        // common verbs of scholarly prose
        "show", "shows", "showed", "shown", "showing", "present", "presents", "presented", "presenting", "propose",
        "proposes", "proposed", "proposing", "find", "finds", "found", "finding", "suggest", "suggests",
        "suggested", "suggesting", "indicate", "indicates", "indicated", "indicating", "describe", "describes",
        "described", "describing", "provide", "provides", "provided", "providing", "examine", "examines",
        "examined", "examining", "investigate", "investigates", "investigated", "investigating", "compare",
        "compares", "compared", "comparing", "discuss", "discusses", "discussed", "discussing", "apply", "applies",
        "applied", "applying", "identify", "identifies", "identified", "identifying", "develop", "develops",
        "developed", "developing", "demonstrate", "demonstrates", "demonstrated", "demonstrating", "reveal",
        "reveals", "revealed", "revealing", "explore", "explores", "explored", "exploring", "include", "includes",
        "included", "including", "based", "use", "uses", "used", "using", "make", "makes", "made", "making",
        "take", "takes", "taken", "took", "give", "gives", "given", "gave", "obtain", "obtains", "obtained",
        "allow", "allows", "allowed", "help", "helps", "helped", "tend", "tends", "tended", "appear", "appears",
        "appeared", "become", "becomes", "became", "remain", "remains", "remained", "seem", "seems", "seemed",
        "consider", "considers", "considered", "conduct", "conducted", "collect", "collected", "tested",
        "measuring", "measured", "evaluating", "evaluated", "visualizing", "visualising", "visualized",
        "analyzing", "analysing", "analyzed", "analysed", "assessing", "assessed", "improving", "improved",
        "improve", "improves", "built", "build", "builds", "get", "gets", "got", "see", "seen", "know", "known",
        "call", "called", "need", "needs", "needed", "according", "regarding", "concerning", "related", "relating",
        "associated", "derived", "considering", "via", "argue", "argues", "argued", "address", "addresses",
        "addressed", "focuses", "focused", "aims", "aimed", "offer", "offers", "offered", "perform", "performs",
        "performed", "require", "requires", "required", "produce", "produces", "produced", "increase",
        "increases", "increased", "decrease", "decreased", "reduce", "reduced", "affect", "affects", "affected",
        "support", "supports", "supported", "work", "works", "worked", "judged", "refine", "refines", "rested",
        "stop", "stops", "grew", "grow", "grows", "counted", "labeled", "labelled", "maps", "lasted", "won",
        "detected", "added", "mapping", "studied",
        // adverbs
        "also", "very", "however", "thus", "therefore", "moreover", "furthermore", "hence", "often", "well",
        "quite", "rather", "highly", "widely", "significantly", "especially", "particularly", "generally",
        "respectively", "mainly", "mostly", "largely", "here", "there", "now", "still", "yet", "already", "even",
        "just", "only", "further", "almost", "always", "never", "sometimes", "usually", "frequently", "recently",
        "currently", "previously", "typically", "relatively", "increasingly", "directly", "indirectly",
        "automatically", "quickly", "carefully", "instead", "later", "too", "again", "perhaps", "whereby",
        "namely", "e.g", "i.e", "etc", "et", "al", "vs",
    };
    return words;
}

bool is_word_char(unsigned char c) {
    return std::isalnum(c) || c >= 0x80 || c == '-' || c == '\'';
}

bool is_break_char(char c) {
    switch (c) {
        case '.': case ',': case ';': case ':': case '!': case '?': case '(': case ')': case '[': case ']':
        case '{': case '}': case '"': case '/': case '|': case '<': case '>': case '=':
            return true;
        default:
            return false;
    }
}

std::string lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Strips hyphens/apostrophes at the edges and possessive "'s".
std::string clean_token(std::string token) {
    if (ends_with(token, "'s")) token.resize(token.size() - 2);
    while (!token.empty() && (token.front() == '-' || token.front() == '\'')) token.erase(token.begin());
    while (!token.empty() && (token.back() == '-' || token.back() == '\'')) token.pop_back();
    return token;
}

bool breaks_clause(std::string_view token) {
    if (token.size() <= 1) return true;
    return std::all_of(token.begin(), token.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.'; });
}

const std::unordered_set<std::string_view>& abbreviations() {
    static const std::unordered_set<std::string_view> abbrevs = {
        "e.g", "i.e", "al", "vs", "fig", "figs", "dr", "mr", "mrs", "ms", "prof", "eq", "eqs", "no", "nos", "vol",
        "pp", "cf", "ca", "approx", "resp", "st", "jr", "sr", "inc", "co", "dept", "univ", "ref", "refs", "sec",
    };
    return abbrevs;
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    bool pending = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending = !out.empty();
            continue;
        }
        if (pending) out.push_back(' ');
        pending = false;
        out.push_back(c);
    }
    return out;
}

}  // namespace

std::vector<std::vector<std::string>> clauses(std::string_view text) {
    std::vector<std::vector<std::string>> result(1);
    std::string token;
    auto flush_token = [&] {
        if (token.empty()) return;
        auto cleaned = clean_token(lower_ascii(token));
        token.clear();
        if (breaks_clause(cleaned)) {
            if (!result.back().empty()) result.emplace_back();
            return;
        }
        result.back().push_back(std::move(cleaned));
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        const auto u = static_cast<unsigned char>(c);
        // Keep "e.g"/"i.e" style abbreviations and decimals together.
        if (c == '.' && !token.empty() && i + 1 < text.size() &&
            std::isalnum(static_cast<unsigned char>(text[i + 1])) && token.size() <= 2) {
            token.push_back(c);
            continue;
        }
        if (is_word_char(u)) {
            token.push_back(c);
            continue;
        }
        flush_token();
        if (is_break_char(c) && !result.back().empty()) result.emplace_back();
    }
    flush_token();
    if (result.back().empty()) result.pop_back();
    return result;
}

bool is_function_word(std::string_view token) {
    return function_words().count(token) > 0;
}

std::string fold_plural(std::string_view token) {
    std::string t(token);
    if (t == "series" || t == "species" || t == "news") return t;
    if (t.size() > 4 && ends_with(t, "ies")) return t.substr(0, t.size() - 3) + "y";
    if (t.size() > 3 && ends_with(t, "s") && !ends_with(t, "ss") && !ends_with(t, "us") && !ends_with(t, "is")) {
        t.pop_back();
    }
    return t;
}

std::vector<std::string> extract_noun_phrases(std::string_view text, std::size_t max_words) {
    std::vector<std::string> phrases;
    std::vector<std::string> run;
    auto emit_run = [&] {
        for (std::size_t start = 0; start < run.size(); start += max_words) {
            std::string phrase;
            for (std::size_t i = start; i < std::min(run.size(), start + max_words); ++i) {
                if (!phrase.empty()) phrase.push_back(' ');
                phrase += run[i];
            }
            phrases.push_back(std::move(phrase));
        }
        run.clear();
    };
    for (const auto& clause : clauses(text)) {
        for (const auto& token : clause) {
            if (is_function_word(token)) {
                emit_run();
                continue;
            }
            run.push_back(fold_plural(token));
        }
        emit_run();
    }
    return phrases;
}

std::vector<std::string> content_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    for (const auto& clause : clauses(text)) {
        for (const auto& token : clause) {
            if (!is_function_word(token)) tokens.push_back(fold_plural(token));
        }
    }
    return tokens;
}

std::vector<std::string> segment_sentences(std::string_view input) {
    static const std::regex copyright(R"(\s*(\([cC]\)|©|[Cc]opyright)\s*\d{4}.*$)");
    std::string text = collapse_whitespace(input);
    text = std::regex_replace(text, copyright, "");

    std::vector<std::string> sentences;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '(') {
            ++depth;
            continue;
        }
        if (c == ')') {
            depth = std::max(0, depth - 1);
            continue;
        }
        if ((c != '.' && c != '!' && c != '?') || depth > 0) continue;
        if (i + 2 >= text.size() || text[i + 1] != ' ') continue;
        const auto next = static_cast<unsigned char>(text[i + 2]);
        if (!std::isupper(next) && !std::isdigit(next)) continue;
        if (c == '.') {
            std::size_t w = i;
            while (w > start && text[w - 1] != ' ' && text[w - 1] != '(') --w;
            if (abbreviations().count(lower_ascii(std::string_view(text).substr(w, i - w))) > 0) continue;
        }
        sentences.push_back(text.substr(start, i + 1 - start));
        start = i + 2;
    }
    if (start < text.size()) sentences.push_back(text.substr(start));
    sentences.erase(std::remove_if(sentences.begin(), sentences.end(), [](const std::string& s) { return s.empty(); }),
                    sentences.end());
    return sentences;
}

}  // namespace cocite::text
