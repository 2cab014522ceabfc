#include "ssdbcodi/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "ssdbcodi/random.hpp"

namespace ssdbcodi {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

// Splits one CSV record. Double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_record(const std::string& line, std::size_t row) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            fields.push_back(was_quoted ? field : trim(field));
            field.clear();
            was_quoted = false;
        } else {
            field.push_back(c);
        }
    }
    if (quoted) throw CsvError("unterminated quoted field", row, fields.size() + 1);
    fields.push_back(was_quoted ? field : trim(field));
    return fields;
}

bool blank(const std::string& line) {
    return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

std::size_t Dataset::num_clusters() const {
    ClassId top = -1;
    for (ClassId t : truth) top = std::max(top, t);
    return static_cast<std::size_t>(top + 1);
}

std::size_t Dataset::num_outliers() const {
    return static_cast<std::size_t>(std::count(truth.begin(), truth.end(), kOutlier));
}

void Dataset::validate() const {
    if (points.rows() < 1 || points.cols() < 1)
        throw std::invalid_argument("dataset needs at least one row and one feature");
    if (truth.size() != points.rows())
        throw std::invalid_argument("dataset truth length does not match row count");
    for (double v : points.data())
        if (!std::isfinite(v)) throw std::invalid_argument("dataset contains a non-finite value");
    std::vector<bool> seen;
    for (ClassId t : truth) {
        if (t == kOutlier) continue;
        if (t < 0) throw std::invalid_argument("dataset truth holds an invalid class id");
        if (static_cast<std::size_t>(t) >= seen.size()) seen.resize(t + 1, false);
        seen[t] = true;
    }
    for (bool s : seen)
        if (!s) throw std::invalid_argument("dataset cluster ids are not contiguous");
}

Dataset make_dataset(Matrix points, std::vector<ClassId> truth, std::string name) {
    Dataset ds{std::move(points), std::move(truth), std::move(name)};
    ds.validate();
    return ds;
}

Dataset parse_csv(std::istream& in, const CsvOptions& options, std::string name) {
    std::string line;
    std::size_t row = 0;
    // Skip leading blank lines, then read the header.
    bool have_header = false;
    while (std::getline(in, line)) {
        ++row;
        if (!blank(line)) {
            have_header = true;
            break;
        }
    }
    if (!have_header) throw CsvError("empty file: no header row", 0, 0);
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

    const auto header = split_record(line, row);
    std::unordered_set<std::string> names;
    std::optional<std::size_t> label_col;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c].empty()) throw CsvError("empty header name", row, c + 1);
        if (!names.insert(header[c]).second)
            throw CsvError("duplicate header '" + header[c] + "'", row, c + 1);
        if (header[c] == options.label_column) label_col = c;
    }
    if (!label_col) throw CsvError("label column '" + options.label_column + "' not found", row, 0);
    if (header.size() < 2) throw CsvError("no feature columns besides the label column", row, 0);

    const std::size_t d = header.size() - 1;
    std::vector<double> values;
    std::vector<ClassId> truth;
    std::unordered_map<std::string, ClassId> ids;
    while (std::getline(in, line)) {
        ++row;
        if (blank(line)) continue;
        const auto fields = split_record(line, row);
        if (fields.size() != header.size()) {
            std::ostringstream msg;
            msg << "row " << row << " has " << fields.size() << " fields, expected " << header.size();
            throw CsvError(msg.str(), row, 0);
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (c == *label_col) continue;
            const std::string& cell = fields[c];
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
                std::ostringstream msg;
                msg << "non-numeric feature '" << cell << "' at row " << row << ", column " << c + 1
                    << " (" << header[c] << ")";
                throw CsvError(msg.str(), row, c + 1);
            }
            values.push_back(v);
        }
        const std::string& label = fields[*label_col];
        if (label == options.outlier_sentinel) {
            truth.push_back(kOutlier);
        } else {
            auto [it, inserted] = ids.try_emplace(label, static_cast<ClassId>(ids.size()));
            truth.push_back(it->second);
        }
    }
    if (truth.empty()) throw CsvError("file has a header but no data rows", row, 0);
    Matrix points(truth.size(), d, std::move(values));
    return make_dataset(std::move(points), std::move(truth), std::move(name));
}

Dataset load_csv(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open '" + path + "'");
    std::string name = path;
    if (const auto slash = name.find_last_of("/\\"); slash != std::string::npos) name.erase(0, slash + 1);
    if (const auto dot = name.rfind('.'); dot != std::string::npos && dot > 0) name.erase(dot);
    return parse_csv(in, options, name);
}

Dataset min_max_scaled(const Dataset& ds) {
    Dataset out = ds;
    for (std::size_t c = 0; c < ds.dims(); ++c) {
        double lo = ds.points(0, c), hi = lo;
        for (std::size_t r = 1; r < ds.size(); ++r) {
            lo = std::min(lo, ds.points(r, c));
            hi = std::max(hi, ds.points(r, c));
        }
        const double span = hi - lo;
        for (std::size_t r = 0; r < ds.size(); ++r)
            out.points(r, c) = span > 0.0 ? (ds.points(r, c) - lo) / span : 0.0;
    }
    return out;
}

std::optional<ClassId> LabelSet::label_of(Index i) const {
    if (auto it = normal.find(i); it != normal.end()) return it->second;
    if (outliers.contains(i)) return kOutlier;
    return std::nullopt;
}

std::vector<Index> LabelSet::labeled() const {
    std::vector<Index> out;
    out.reserve(size());
    for (const auto& [i, c] : normal) out.push_back(i);
    out.insert(out.end(), outliers.begin(), outliers.end());
    std::sort(out.begin(), out.end());
    return out;
}

void LabelSet::validate(std::size_t n) const {
    for (const auto& [i, c] : normal) {
        if (i >= n) throw std::invalid_argument("labeled index out of range");
        if (c < 0) throw std::invalid_argument("normal label must be a non-negative cluster id");
        if (outliers.contains(i)) throw std::invalid_argument("index labeled both normal and outlier");
    }
    for (Index i : outliers)
        if (i >= n) throw std::invalid_argument("labeled outlier index out of range");
}

std::string LabelSet::serialize() const {
    std::ostringstream out;
    out << "normal:";
    for (const auto& [i, c] : normal) out << ' ' << i << '=' << c;
    out << "\noutliers:";
    for (Index i : outliers) out << ' ' << i;
    out << '\n';
    return out.str();
}

LabelSet reveal_labels(const Dataset& ds, const std::vector<Index>& indices) {
    LabelSet labels;
    for (Index i : indices) {
        if (i >= ds.size()) throw std::out_of_range("reveal_labels: index out of range");
        if (ds.truth[i] == kOutlier)
            labels.outliers.insert(i);
        else
            labels.normal[i] = ds.truth[i];
    }
    return labels;
}

std::size_t label_count(std::size_t n, double fraction) {
    return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 0.5));
}

LabelSet sample_labels(const Dataset& ds, double fraction, std::uint64_t seed, bool stratified) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw std::invalid_argument("label fraction must lie in (0, 1]");
    const std::size_t n = ds.size();
    std::size_t count = label_count(n, fraction);
    if (count == 0) throw std::invalid_argument("label fraction selects zero points");

    Rng rng(seed);
    std::vector<Index> chosen;
    std::vector<bool> taken(n, false);
    if (stratified) {
        std::vector<std::vector<Index>> members(ds.num_clusters());
        for (Index i = 0; i < n; ++i)
            if (ds.truth[i] != kOutlier) members[ds.truth[i]].push_back(i);
        for (const auto& m : members) {
            const Index pick = m[uniform_below(rng, m.size())];
            chosen.push_back(pick);
            taken[pick] = true;
        }
        count = std::max(count, chosen.size());
    }
    std::vector<Index> pool;
    pool.reserve(n);
    for (Index i = 0; i < n; ++i)
        if (!taken[i]) pool.push_back(i);
    // Partial Fisher-Yates over the remaining pool.
    for (std::size_t k = 0; chosen.size() < count; ++k) {
        const std::size_t j = k + uniform_below(rng, pool.size() - k);
        std::swap(pool[k], pool[j]);
        chosen.push_back(pool[k]);
    }
    return reveal_labels(ds, chosen);
}

}  // namespace ssdbcodi
