#pragma once

#include <fstream>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tdiff::cli {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

Format parse_format(const std::string& name);

/// Destination for a data file. With an empty path everything goes to the
/// fallback stream. A file is created up front (so an unwritable directory
/// fails before any work) and deleted again unless commit() is reached.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback);
    Sink(const Sink&) = delete;
    Sink& operator=(const Sink&) = delete;
    ~Sink();

    std::ostream& stream() { return path_.empty() ? fallback_ : file_; }
    bool to_file() const { return !path_.empty(); }
    void commit();

private:
    std::string path_;
    std::ostream& fallback_;
    std::ofstream file_;
    bool committed_ = false;
};

using Labels = std::vector<std::pair<std::string, double>>;

/// Ordered table output. CSV blocks carry their own header; when a command
/// emits more than one block each is introduced by a `# key=value` comment
/// and separated by a blank line. JSON output is one flat array of objects
/// holding the block labels followed by the row columns.
class TableWriter {
public:
    TableWriter(std::ostream& out, Format format, std::vector<std::string> columns,
                bool labelled_blocks);
    void block(const Labels& labels, const std::vector<std::vector<double>>& rows);
    void finish();

private:
    std::ostream& out_;
    Format format_;
    std::vector<std::string> columns_;
    bool labelled_;
    bool first_block_ = true;
    bool first_object_ = true;
};

}  // namespace tdiff::cli
