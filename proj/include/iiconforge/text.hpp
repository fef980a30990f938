#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace iiconforge {
namespace text {

inline bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && is_ascii_space(s[b])) ++b;
    while (e > b && is_ascii_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

/// Lowercase ASCII letters and the Latin-1 supplement block (UTF-8 encoded).
/// Codepoints outside those ranges pass through unchanged; input is assumed
/// to be NFC-normalized already.
inline std::string lowercase(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (size_t i = 0; i < s.size();) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (c < 0x80) {
            out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c + 32) : static_cast<char>(c));
            ++i;
        } else if (c == 0xC3 && i + 1 < s.size()) {
            // Latin-1 supplement: U+00C0..U+00DE lowercase to U+00E0..U+00FE,
            // except U+00D7 (multiplication sign).
            unsigned char d = static_cast<unsigned char>(s[i + 1]);
            if (d >= 0x80 && d <= 0x9E && d != 0x97) d += 0x20;
            out.push_back(static_cast<char>(c));
            out.push_back(static_cast<char>(d));
            i += 2;
        } else {
            out.push_back(static_cast<char>(c));
            ++i;
        }
    }
    return out;
}

/// Collapse internal runs of ASCII whitespace to a single space and trim ends.
inline std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_space = false;
    for (char c : s) {
        if (is_ascii_space(c)) {
            in_space = true;
        } else {
            if (in_space && !out.empty()) out.push_back(' ');
            in_space = false;
            out.push_back(c);
        }
    }
    return out;
}

/// Canonical label form used for all string matching: trim, collapse
/// whitespace, lowercase. No stemming, no fuzzy matching.
inline std::string normalize_label(std::string_view s) {
    return lowercase(collapse_whitespace(s));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

/// Split on a multi-character separator; no empty-trailing suppression.
inline std::vector<std::string> split(std::string_view s, std::string_view sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + sep.size();
    }
}

/// Transliterate Latin-1 supplement and Latin-extended-A letters to ASCII.
/// Anything still non-ASCII afterwards is dropped by the caller's tokenizer.
inline std::string ascii_transliterate(std::string_view s) {
    static const struct { uint32_t cp; const char* out; } table[] = {
        {0x00C0, "A"}, {0x00C1, "A"}, {0x00C2, "A"}, {0x00C3, "A"}, {0x00C4, "A"}, {0x00C5, "A"},
        {0x00C6, "AE"}, {0x00C7, "C"}, {0x00C8, "E"}, {0x00C9, "E"}, {0x00CA, "E"}, {0x00CB, "E"},
        {0x00CC, "I"}, {0x00CD, "I"}, {0x00CE, "I"}, {0x00CF, "I"}, {0x00D0, "D"}, {0x00D1, "N"},
        {0x00D2, "O"}, {0x00D3, "O"}, {0x00D4, "O"}, {0x00D5, "O"}, {0x00D6, "O"}, {0x00D8, "O"},
        {0x00D9, "U"}, {0x00DA, "U"}, {0x00DB, "U"}, {0x00DC, "U"}, {0x00DD, "Y"}, {0x00DE, "TH"},
        {0x00DF, "ss"},
        {0x00E0, "a"}, {0x00E1, "a"}, {0x00E2, "a"}, {0x00E3, "a"}, {0x00E4, "a"}, {0x00E5, "a"},
        {0x00E6, "ae"}, {0x00E7, "c"}, {0x00E8, "e"}, {0x00E9, "e"}, {0x00EA, "e"}, {0x00EB, "e"},
        {0x00EC, "i"}, {0x00ED, "i"}, {0x00EE, "i"}, {0x00EF, "i"}, {0x00F0, "d"}, {0x00F1, "n"},
        {0x00F2, "o"}, {0x00F3, "o"}, {0x00F4, "o"}, {0x00F5, "o"}, {0x00F6, "o"}, {0x00F8, "o"},
        {0x00F9, "u"}, {0x00FA, "u"}, {0x00FB, "u"}, {0x00FC, "u"}, {0x00FD, "y"}, {0x00FE, "th"},
        {0x00FF, "y"},
        {0x0152, "OE"}, {0x0153, "oe"}, {0x0160, "S"}, {0x0161, "s"}, {0x017D, "Z"}, {0x017E, "z"},
    };

    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
            ++i;
            continue;
        }
        // Decode one UTF-8 sequence.
        uint32_t cp = 0;
        size_t len = 1;
        if ((c & 0xE0) == 0xC0 && i + 1 < s.size()) {
            cp = (c & 0x1Fu) << 6 | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu);
            len = 2;
        } else if ((c & 0xF0) == 0xE0 && i + 2 < s.size()) {
            cp = (c & 0x0Fu) << 12 | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 6 |
                 (static_cast<unsigned char>(s[i + 2]) & 0x3Fu);
            len = 3;
        } else if ((c & 0xF8) == 0xF0 && i + 3 < s.size()) {
            len = 4;
        }
        bool mapped = false;
        for (const auto& row : table) {
            if (row.cp == cp) {
                out += row.out;
                mapped = true;
                break;
            }
        }
        if (!mapped && cp != 0) {
            // Unmapped non-ASCII: keep nothing, the caller treats it as a
            // token separator.
            out.push_back(' ');
        }
        i += len;
    }
    return out;
}

/// Lowercase the phrase, split on non-alphanumeric runs, join camelCase
/// (first word all-lowercase, later words capitalized at their first letter).
/// Returns "" when the phrase has no alphanumeric content.
inline std::string mint_camel_case(std::string_view phrase) {
    std::string ascii = ascii_transliterate(phrase);
    std::string lower = lowercase(ascii);
    std::vector<std::string> words;
    std::string cur;
    for (char c : lower) {
        bool alnum = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
        if (alnum) {
            cur.push_back(c);
        } else if (!cur.empty()) {
            words.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) words.push_back(cur);
    std::string out;
    for (size_t w = 0; w < words.size(); ++w) {
        std::string word = words[w];
        if (w > 0) {
            for (auto& ch : word) {
                if (ch >= 'a' && ch <= 'z') {
                    ch = static_cast<char>(ch - 32);
                    break;
                }
            }
        }
        out += word;
    }
    return out;
}

// TSV cell escaping: tab, newline, carriage return and backslash are
// backslash-escaped so free text survives a round trip.
inline std::string tsv_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

inline std::string tsv_unescape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\' && i + 1 < s.size()) {
            switch (s[i + 1]) {
                case '\\': out.push_back('\\'); ++i; continue;
                case 't': out.push_back('\t'); ++i; continue;
                case 'n': out.push_back('\n'); ++i; continue;
                case 'r': out.push_back('\r'); ++i; continue;
                default: break;
            }
        }
        out.push_back(s[i]);
    }
    return out;
}

inline bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

} // namespace text
} // namespace iiconforge
