#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "setcalc/cli.hpp"

namespace testgen {

inline std::vector<setcalc::cli::CorpusEntry> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return setcalc::cli::parse_corpus(in);
}

inline std::string shipped_corpus_path() { return std::string(SETCALC_CORPUS_DIR) + "/paper.corpus"; }
inline std::string mutants_corpus_path() { return std::string(SETCALC_TEST_DATA) + "/mutants.corpus"; }

} // namespace testgen
