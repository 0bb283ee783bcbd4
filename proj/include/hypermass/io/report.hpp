#pragma once

#include <string>
#include <variant>
#include <vector>

namespace hypermass::io {

// Shortest decimal string that round-trips the double (std::to_chars).
// Locale independent; '.' is always the decimal separator.
std::string fmt(double v);

// A value together with its estimated absolute error. Every number a report
// carries comes with one; closed-form values report error 0.
struct Measured {
    double value;
    double error;
};

// An ordered report: the echoed command, then items in insertion order, then
// the exit status. Renders as plain text (key: value lines) or as JSON. Both
// renderings are byte deterministic for identical inputs.
class Report {
public:
    struct Table {
        std::vector<std::string> header;
        std::vector<std::vector<std::string>> rows;
    };
    struct Csv {
        std::vector<std::string> header;
        std::vector<std::vector<double>> rows;
    };
    using Value = std::variant<std::string, double, Measured,
                               std::vector<double>, std::vector<Measured>,
                               Table, Csv>;

    void command(const std::string& echo) { command_ = echo; }
    void item(const std::string& key, Value v);
    void exit_status(int code) { exit_ = code; }
    int exit_status() const { return exit_; }

    std::string text() const;
    std::string json_text() const;

private:
    std::string command_;
    std::vector<std::pair<std::string, Value>> items_;
    int exit_ = 0;
};

}  // namespace hypermass::io
