// Copyright 2026 The gestaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gestaug/skeleton.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gestaug/image.hpp"  // validate_sample_id

namespace gestaug {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
        if (pos > start) tokens.push_back(line.substr(start, pos - start));
    }
    return tokens;
}

double parse_real(std::string_view token, const std::string& file, int line) {
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(file, line,
                         "expected a real number, got '" + std::string(token) + "'");
    }
    return value;
}

long parse_int(std::string_view token, const std::string& file, int line) {
    long value = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(file, line,
                         "expected an integer, got '" + std::string(token) + "'");
    }
    return value;
}

std::string format_real(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

// Strips a trailing '\r' so CRLF files parse the same as LF files.
bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

std::string replace_all(std::string text, const std::string& from,
                        const std::string& to) {
    std::size_t pos = 0;
    while ((pos = text.find(from, pos)) != std::string::npos) {
        text.replace(pos, from.size(), to);
        pos += to.size();
    }
    return text;
}

int require_column(const std::vector<std::string_view>& tokens, int column,
                   const std::string& file, int line) {
    if (column < 0 || static_cast<std::size_t>(column) >= tokens.size()) {
        throw ParseError(file, line,
                         "missing column " + std::to_string(column) + " (row has " +
                             std::to_string(tokens.size()) + " columns)");
    }
    return static_cast<int>(parse_int(tokens[static_cast<std::size_t>(column)],
                                      file, line));
}

int normalize_label(int raw, int offset, int num_classes, const std::string& file,
                    int line, const std::string& scheme) {
    const int label = raw - offset;
    if (label < 0 || label >= num_classes) {
        throw ParseError(file, line,
                         scheme + " label " + std::to_string(raw) +
                             " outside valid range after offset (0.." +
                             std::to_string(num_classes - 1) + ")");
    }
    return label;
}

}  // namespace

void SkeletonSequence::validate() const {
    if (joint_count < 1) {
        throw std::invalid_argument("SkeletonSequence: joint_count must be >= 1");
    }
    for (const auto& frame : frames) {
        if (static_cast<int>(frame.size()) != joint_count) {
            throw std::invalid_argument("SkeletonSequence: frame joint count mismatch");
        }
        for (const auto& joint : frame) {
            if (!std::isfinite(joint.x) || !std::isfinite(joint.y) ||
                !std::isfinite(joint.z)) {
                throw std::invalid_argument("SkeletonSequence: non-finite coordinate");
            }
        }
    }
}

SkeletonSequence parse_skeleton_text(const std::filesystem::path& path,
                                     int joint_count) {
    std::ifstream file(path);
    if (!file) {
        throw std::runtime_error("parse_skeleton_text: cannot open " + path.string());
    }
    const std::string name = path.string();
    const std::size_t expected = static_cast<std::size_t>(joint_count) * 3;

    SkeletonSequence seq;
    seq.joint_count = joint_count;

    std::string line;
    int line_no = 0;
    while (read_line(file, line)) {
        ++line_no;
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;  // blank lines carry no frame
        if (tokens.size() != expected) {
            throw ParseError(name, line_no,
                             "expected " + std::to_string(expected) + " values (" +
                                 std::to_string(joint_count) + " joints x 3), got " +
                                 std::to_string(tokens.size()));
        }
        std::vector<Joint> frame(static_cast<std::size_t>(joint_count));
        for (int j = 0; j < joint_count; ++j) {
            frame[static_cast<std::size_t>(j)] = Joint{
                parse_real(tokens[static_cast<std::size_t>(3 * j)], name, line_no),
                parse_real(tokens[static_cast<std::size_t>(3 * j + 1)], name, line_no),
                parse_real(tokens[static_cast<std::size_t>(3 * j + 2)], name, line_no)};
        }
        seq.frames.push_back(std::move(frame));
    }
    return seq;
}

void export_normalized(const std::filesystem::path& path,
                       const SkeletonSequence& seq) {
    seq.validate();
    std::ostringstream out;
    out << "gestaug-skeleton 1\n";
    out << "joints " << seq.joint_count << "\n";
    out << "frames " << seq.frames.size() << "\n";
    if (seq.frame_rate) {
        out << "rate " << format_real(*seq.frame_rate) << "\n";
    }
    for (const auto& frame : seq.frames) {
        bool first = true;
        for (const auto& joint : frame) {
            if (!first) out << ' ';
            first = false;
            out << format_real(joint.x) << ' ' << format_real(joint.y) << ' '
                << format_real(joint.z);
        }
        out << '\n';
    }

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("export_normalized: cannot open " + path.string());
    }
    file << out.str();
    if (!file) {
        throw std::runtime_error("export_normalized: write failed for " + path.string());
    }
}

SkeletonSequence import_normalized(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) {
        throw std::runtime_error("import_normalized: cannot open " + path.string());
    }
    const std::string name = path.string();

    std::string line;
    if (!read_line(file, line)) {
        throw ParseError(name, 1, "empty file");
    }
    if (line != "gestaug-skeleton 1") {
        throw ParseError(name, 1, "unsupported schema: '" + line + "'");
    }

    SkeletonSequence seq;
    long declared_frames = -1;
    int line_no = 1;
    bool in_header = true;

    auto parse_frame = [&](const std::vector<std::string_view>& tokens) {
        const std::size_t expected = static_cast<std::size_t>(seq.joint_count) * 3;
        if (tokens.size() != expected) {
            throw ParseError(name, line_no,
                             "expected " + std::to_string(expected) +
                                 " coordinates, got " + std::to_string(tokens.size()));
        }
        std::vector<Joint> frame(static_cast<std::size_t>(seq.joint_count));
        for (int j = 0; j < seq.joint_count; ++j) {
            frame[static_cast<std::size_t>(j)] =
                Joint{parse_real(tokens[static_cast<std::size_t>(3 * j)], name, line_no),
                      parse_real(tokens[static_cast<std::size_t>(3 * j + 1)], name, line_no),
                      parse_real(tokens[static_cast<std::size_t>(3 * j + 2)], name, line_no)};
        }
        seq.frames.push_back(std::move(frame));
    };

    while (read_line(file, line)) {
        ++line_no;
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (in_header && tokens.size() == 2) {
            if (tokens[0] == "joints") {
                seq.joint_count = static_cast<int>(parse_int(tokens[1], name, line_no));
                continue;
            }
            if (tokens[0] == "frames") {
                declared_frames = parse_int(tokens[1], name, line_no);
                continue;
            }
            if (tokens[0] == "rate") {
                seq.frame_rate = parse_real(tokens[1], name, line_no);
                continue;
            }
        }
        in_header = false;
        parse_frame(tokens);
    }

    if (declared_frames >= 0 &&
        declared_frames != static_cast<long>(seq.frames.size())) {
        throw ParseError(name, line_no,
                         "frame count mismatch: header declares " +
                             std::to_string(declared_frames) + ", file holds " +
                             std::to_string(seq.frames.size()));
    }
    seq.validate();
    return seq;
}

DatasetProfile shrec17_profile() {
    DatasetProfile profile;
    profile.name = "shrec17";
    return profile;
}

DatasetProfile generic_profile(int joint_count, int num_classes) {
    DatasetProfile profile;
    profile.name = "generic";
    profile.joint_count = joint_count;
    profile.label_offset = 0;
    profile.num_classes_14 = num_classes;  // single scheme
    profile.col_label28 = -1;
    profile.split_files = {"index.txt"};
    profile.sequence_pattern.clear();
    return profile;
}

DatasetProfile profile_by_name(const std::string& name, int joint_count,
                               int num_classes) {
    if (name == "shrec17") {
        DatasetProfile profile = shrec17_profile();
        profile.joint_count = joint_count;
        return profile;
    }
    if (name == "generic") {
        return generic_profile(joint_count, num_classes);
    }
    throw ConfigError("unknown dataset profile: " + name);
}

std::vector<IndexRow> parse_split_index(const std::filesystem::path& path,
                                        const DatasetProfile& profile,
                                        const std::string& split) {
    std::ifstream file(path);
    if (!file) {
        throw std::runtime_error("parse_split_index: cannot open " + path.string());
    }
    const std::string name = path.string();

    std::vector<IndexRow> rows;
    std::string line;
    int line_no = 0;
    while (read_line(file, line)) {
        ++line_no;
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;

        const int gesture = require_column(tokens, profile.col_gesture, name, line_no);
        const int finger = require_column(tokens, profile.col_finger, name, line_no);
        const int subject = require_column(tokens, profile.col_subject, name, line_no);
        const int essai = require_column(tokens, profile.col_essai, name, line_no);

        IndexRow row;
        row.subject = subject;
        row.trial = essai;
        row.split = split;
        row.sample_id = profile.name + "-g" + std::to_string(gesture) + "-f" +
                        std::to_string(finger) + "-s" + std::to_string(subject) +
                        "-e" + std::to_string(essai);

        std::string relative = profile.sequence_pattern;
        relative = replace_all(relative, "{gesture}", std::to_string(gesture));
        relative = replace_all(relative, "{finger}", std::to_string(finger));
        relative = replace_all(relative, "{subject}", std::to_string(subject));
        relative = replace_all(relative, "{essai}", std::to_string(essai));
        row.sequence_path = relative;

        if (profile.col_label14 >= 0) {
            const int raw = require_column(tokens, profile.col_label14, name, line_no);
            row.label14 = normalize_label(raw, profile.label_offset,
                                          profile.num_classes_14, name, line_no, "14g");
        }
        if (profile.col_label28 >= 0) {
            const int raw = require_column(tokens, profile.col_label28, name, line_no);
            row.label28 = normalize_label(raw, profile.label_offset,
                                          profile.num_classes_28, name, line_no, "28g");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<IndexRow> parse_generic_index(const std::filesystem::path& path,
                                          const DatasetProfile& profile) {
    std::ifstream file(path);
    if (!file) {
        throw std::runtime_error("parse_generic_index: cannot open " + path.string());
    }
    const std::string name = path.string();

    std::vector<IndexRow> rows;
    std::string line;
    int line_no = 0;
    while (read_line(file, line)) {
        ++line_no;
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens.size() < 2) {
            throw ParseError(name, line_no, "expected `<path> <label> [subject] [trial]`");
        }

        IndexRow row;
        row.sequence_path = std::string(tokens[0]);
        const int raw = static_cast<int>(parse_int(tokens[1], name, line_no));
        row.label14 = normalize_label(raw, profile.label_offset,
                                      profile.num_classes_14, name, line_no, "label");
        if (tokens.size() > 2) {
            row.subject = static_cast<int>(parse_int(tokens[2], name, line_no));
        }
        if (tokens.size() > 3) {
            row.trial = static_cast<int>(parse_int(tokens[3], name, line_no));
        }
        row.split = "all";

        // Sample id from the path, sanitized to the id alphabet.
        std::string id = row.sequence_path.string();
        if (const auto dot = id.rfind('.'); dot != std::string::npos) {
            id.resize(dot);
        }
        for (auto& ch : id) {
            const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                            (ch >= '0' && ch <= '9') || ch == '-' || ch == '_';
            if (!ok) ch = '_';
        }
        row.sample_id = profile.name + "-" + id;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_index(const std::filesystem::path& path, const DatasetIndex& index) {
    std::set<std::string> seen;
    std::ostringstream out;
    out << "gestaug-index 1\n";
    out << "profile " << index.profile.name << "\n";
    out << "joints " << index.profile.joint_count << "\n";
    out << "classes14 " << index.profile.num_classes_14 << "\n";
    out << "classes28 " << index.profile.num_classes_28 << "\n";
    for (const auto& row : index.rows) {
        validate_sample_id(row.sample_id);
        if (!seen.insert(row.sample_id).second) {
            throw std::invalid_argument("write_index: duplicate sample_id " +
                                        row.sample_id);
        }
        out << "entry " << row.sample_id << ' ' << row.sequence_path.generic_string()
            << ' ' << (row.label14 ? std::to_string(*row.label14) : "-") << ' '
            << (row.label28 ? std::to_string(*row.label28) : "-") << ' '
            << row.subject << ' ' << row.trial << ' ' << row.split << '\n';
    }

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("write_index: cannot open " + path.string());
    }
    file << out.str();
    if (!file) {
        throw std::runtime_error("write_index: write failed for " + path.string());
    }
}

DatasetIndex read_index(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) {
        throw std::runtime_error("read_index: cannot open " + path.string());
    }
    const std::string name = path.string();

    std::string line;
    if (!read_line(file, line) || line != "gestaug-index 1") {
        throw ParseError(name, 1, "unsupported index schema");
    }

    DatasetIndex index;
    int line_no = 1;
    while (read_line(file, line)) {
        ++line_no;
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens[0] == "profile" && tokens.size() == 2) {
            index.profile.name = std::string(tokens[1]);
        } else if (tokens[0] == "joints" && tokens.size() == 2) {
            index.profile.joint_count =
                static_cast<int>(parse_int(tokens[1], name, line_no));
        } else if (tokens[0] == "classes14" && tokens.size() == 2) {
            index.profile.num_classes_14 =
                static_cast<int>(parse_int(tokens[1], name, line_no));
        } else if (tokens[0] == "classes28" && tokens.size() == 2) {
            index.profile.num_classes_28 =
                static_cast<int>(parse_int(tokens[1], name, line_no));
        } else if (tokens[0] == "entry") {
            if (tokens.size() != 8) {
                throw ParseError(name, line_no, "index entry must have 7 fields");
            }
            IndexRow row;
            row.sample_id = std::string(tokens[1]);
            row.sequence_path = std::string(tokens[2]);
            if (tokens[3] != "-") {
                row.label14 = static_cast<int>(parse_int(tokens[3], name, line_no));
            }
            if (tokens[4] != "-") {
                row.label28 = static_cast<int>(parse_int(tokens[4], name, line_no));
            }
            row.subject = static_cast<int>(parse_int(tokens[5], name, line_no));
            row.trial = static_cast<int>(parse_int(tokens[6], name, line_no));
            row.split = std::string(tokens[7]);
            index.rows.push_back(std::move(row));
        } else {
            throw ParseError(name, line_no, "unrecognized index line");
        }
    }
    return index;
}

}  // namespace gestaug
