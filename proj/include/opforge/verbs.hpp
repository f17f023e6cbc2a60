#pragma once

#include "opforge/io.hpp"

namespace opforge {

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct VerbOptions {
    std::string ring;  // "" = workspace ring
    int max_arity = 3;
    int truncation = -1;  // -1 = derived per verb
    long seed = 1;
    std::string format = "text";
    std::string out;

    // named references / builtins
    std::string operad, algebra, splitting, complex, map, module, generators;
    std::string category = "arrow";
    std::string f, g;
    std::string source, target;  // prop-hom color tuples, comma separated
    int level = 3;
    int n = 1;
    int degree = 0;
    int color = 0;
    int count = 5;
    int window = -1;
    int gen_rank = 1;
};

struct VerbReport {
    int exit_code = 0;  // 0 pass, 1 mathematical failure
    std::string text;
    nlohmann::json machine;
};

const std::vector<std::string>& verb_names();

// Dispatches to the library; throws UsageError (and lets ParseError /
// ValidationError pass through) for exit status 2 conditions.
VerbReport run_verb(const std::string& verb, const VerbOptions& opt, Workspace& ws);

std::string superscript(int n);

}  // namespace opforge
