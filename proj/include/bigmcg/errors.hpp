#pragma once

#include <stdexcept>
#include <string>

namespace bigmcg {

// Parse failure in one of the text formats. Carries 1-based line/column.
class syntax_error : public std::runtime_error {
public:
    syntax_error(std::string msg, int line, int column)
        : std::runtime_error("syntax error at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// A structurally well-formed value violates a domain invariant.
class validity_error : public std::runtime_error {
public:
    explicit validity_error(const std::string& msg)
        : std::runtime_error("validity error: " + msg) {}
};

// A configured search/recursion budget was exhausted.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& msg)
        : std::runtime_error("resource budget exhausted: " + msg) {}
};

// An operation's precondition does not hold (e.g. chain construction
// without HP/JEP).
class precondition_error : public std::runtime_error {
public:
    explicit precondition_error(const std::string& msg)
        : std::runtime_error("precondition failed: " + msg) {}
};

// A supplied generator is not an automorphism of the structure.
class not_automorphism_error : public std::runtime_error {
public:
    not_automorphism_error(const std::string& msg, int generator_index)
        : std::runtime_error("not an automorphism (generator #" +
                             std::to_string(generator_index) + "): " + msg),
          generator_index_(generator_index) {}

    int generator_index() const { return generator_index_; }

private:
    int generator_index_;
};

// A partial-isomorphism pair whose map is not an isomorphism of induced
// substructures.
class ill_formed_pair_error : public std::runtime_error {
public:
    explicit ill_formed_pair_error(const std::string& msg)
        : std::runtime_error("ill-formed pair: " + msg) {}
};

} // namespace bigmcg
