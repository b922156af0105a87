#include "output.hpp"

#include <cstdio>
#include <ostream>

#include "tdiff/format.hpp"

namespace tdiff::cli {

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw std::invalid_argument("unknown format '" + name + "' (csv or json)");
}

Sink::Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {
    if (path_.empty()) return;
    file_.open(path_, std::ios::binary | std::ios::trunc);
    if (!file_) throw IoError("cannot open '" + path_ + "' for writing");
}

Sink::~Sink() {
    if (path_.empty() || committed_) return;
    file_.close();
    std::remove(path_.c_str());
}

void Sink::commit() {
    stream().flush();
    if (!stream()) throw IoError(path_.empty() ? "write to standard output failed"
                                               : "write to '" + path_ + "' failed");
    if (!path_.empty()) {
        file_.close();
        if (file_.fail()) throw IoError("closing '" + path_ + "' failed");
    }
    committed_ = true;
}

TableWriter::TableWriter(std::ostream& out, Format format, std::vector<std::string> columns,
                         bool labelled_blocks)
    : out_(out), format_(format), columns_(std::move(columns)), labelled_(labelled_blocks) {
    if (format_ == Format::json) out_ << '[';
}

void TableWriter::block(const Labels& labels, const std::vector<std::vector<double>>& rows) {
    if (format_ == Format::csv) {
        if (labelled_) {
            if (!first_block_) out_ << '\n';
            out_ << '#';
            for (std::size_t i = 0; i < labels.size(); ++i) {
                out_ << (i == 0 ? " " : ",") << labels[i].first << '='
                     << format_number(labels[i].second);
            }
            out_ << '\n';
        }
        for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
        out_ << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out_ << (i ? "," : "") << format_number(row[i]);
            }
            out_ << '\n';
        }
    } else {
        for (const auto& row : rows) {
            out_ << (first_object_ ? "\n" : ",\n") << '{';
            first_object_ = false;
            bool first_key = true;
            const auto key = [&](const std::string& name, double value) {
                out_ << (first_key ? "" : ",") << '"' << name << "\":" << format_number(value);
                first_key = false;
            };
            for (const auto& [name, value] : labels) key(name, value);
            for (std::size_t i = 0; i < row.size(); ++i) key(columns_[i], row[i]);
            out_ << '}';
        }
    }
    first_block_ = false;
}

void TableWriter::finish() {
    if (format_ == Format::json) out_ << "\n]\n";
}

}  // namespace tdiff::cli
