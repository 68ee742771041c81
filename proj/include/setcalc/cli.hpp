#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "setcalc/expr.hpp"
#include "setcalc/indicator.hpp"

namespace setcalc::cli {

// Exit codes shared by every command.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kUsage = 2;

struct Options {
    bool json = false;
    bool witness = false;
    int guard = kDefaultGuard;
    std::uint64_t seed = 0;
    std::size_t universe_size = 3;
};

enum class Expectation { valid, invalid, vacuous, solvable, unsolvable, report };

struct CorpusEntry {
    std::string id;
    Statement statement;
    Expectation expectation;
    std::size_t line = 0;
};

class CorpusFormatError : public Error {
public:
    CorpusFormatError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// `[id] statement :: expect valid|invalid|vacuous|solvable|unsolvable|report`,
// one per line; `#` starts a comment. Throws CorpusFormatError.
std::vector<CorpusEntry> parse_corpus(std::istream& in);

int cmd_check(const std::string& text, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_normalize(const std::string& text, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_solve(const std::string& text, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_structures(const std::string& suite, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_corpus(const std::string& path, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_corpus(std::istream& in, const Options& opt, std::ostream& out, std::ostream& err);

// Full command line, argv[0] included.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace setcalc::cli
