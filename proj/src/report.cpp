#include "hypermass/io/report.hpp"

#include <charconv>
#include <utility>

#include "json.hpp"

namespace hypermass::io {

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void Report::item(const std::string& key, Value v) {
    items_.emplace_back(key, std::move(v));
}

namespace {

std::string render(const Measured& m) {
    return fmt(m.value) + " +- " + fmt(m.error);
}

std::string render(const Report::Value& v) {
    struct R {
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(double d) const { return fmt(d); }
        std::string operator()(const Measured& m) const { return render(m); }
        std::string operator()(const std::vector<double>& vs) const {
            std::string out;
            for (std::size_t i = 0; i < vs.size(); ++i) {
                if (i) out += ' ';
                out += fmt(vs[i]);
            }
            return out;
        }
        std::string operator()(const std::vector<Measured>& ms) const {
            std::string out;
            for (std::size_t i = 0; i < ms.size(); ++i) {
                if (i) out += ", ";
                out += render(ms[i]);
            }
            return out;
        }
        std::string operator()(const Report::Table&) const { return {}; }
        std::string operator()(const Report::Csv&) const { return {}; }
    };
    return std::visit(R{}, v);
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace

// Text form. When the report carries a CSV block, every key: value line is
// prefixed with "# " so the whole output stays machine-readable as CSV with
// comments.
std::string Report::text() const {
    bool has_csv = false;
    for (const auto& [key, v] : items_)
        if (std::holds_alternative<Csv>(v)) has_csv = true;
    const char* pre = has_csv ? "# " : "";

    std::string out;
    out += pre;
    out += "command: " + command_ + "\n";
    for (const auto& [key, v] : items_) {
        if (const auto* t = std::get_if<Table>(&v)) {
            out += pre;
            out += key + ":\n";
            out += "  " + join(t->header, " | ") + "\n";
            for (const auto& row : t->rows) out += "  " + join(row, " | ") + "\n";
        } else if (const auto* c = std::get_if<Csv>(&v)) {
            out += join(c->header, ",") + "\n";
            for (const auto& row : c->rows) {
                std::string line;
                for (std::size_t i = 0; i < row.size(); ++i) {
                    if (i) line += ',';
                    line += fmt(row[i]);
                }
                out += line + "\n";
            }
        } else {
            out += pre;
            out += key + ": " + render(v) + "\n";
        }
    }
    out += pre;
    out += "exit: " + std::to_string(exit_) + "\n";
    return out;
}

std::string Report::json_text() const {
    nlohmann::ordered_json root;
    root["command"] = command_;
    auto& items = root["items"] = nlohmann::ordered_json::array();
    for (const auto& [key, v] : items_) {
        nlohmann::ordered_json e;
        e["key"] = key;
        struct J {
            nlohmann::ordered_json& e;
            void operator()(const std::string& s) const { e["text"] = s; }
            void operator()(double d) const { e["value"] = d; }
            void operator()(const Measured& m) const {
                e["value"] = m.value;
                e["error"] = m.error;
            }
            void operator()(const std::vector<double>& vs) const {
                e["values"] = vs;
            }
            void operator()(const std::vector<Measured>& ms) const {
                auto& a = e["values"] = nlohmann::ordered_json::array();
                for (const auto& m : ms)
                    a.push_back({{"value", m.value}, {"error", m.error}});
            }
            void operator()(const Report::Table& t) const {
                e["header"] = t.header;
                e["rows"] = t.rows;
            }
            void operator()(const Report::Csv& c) const {
                e["header"] = c.header;
                e["rows"] = c.rows;
            }
        };
        std::visit(J{e}, v);
        items.push_back(std::move(e));
    }
    root["exit"] = exit_;
    return root.dump(2) + "\n";
}

}  // namespace hypermass::io
