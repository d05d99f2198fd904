#include "crfdspam/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "crfdspam/util.hpp"

namespace crfdspam {

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line,
                             const std::string& what) {
  throw std::runtime_error(path.filename().string() + ":" + std::to_string(line) + ": " + what);
}

// Minimal RFC-4180 field splitter: quoted fields may contain commas and
// doubled quotes.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

bool is_jsonl(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  return ext == ".jsonl" || ext == ".ndjson" || ext == ".json";
}

std::int64_t parse_int(const std::string& s, const std::filesystem::path& path,
                       std::size_t line, const char* field) {
  std::int64_t value = 0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    parse_fail(path, line, std::string("cannot parse ") + field + " '" + s + "' as an integer");
  return value;
}

double parse_double(const std::string& s, const std::filesystem::path& path,
                    std::size_t line, const char* field) {
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    parse_fail(path, line, std::string("cannot parse ") + field + " '" + s + "' as a number");
  return value;
}

bool looks_like_iso_date(const std::string& s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

double parse_day_value(const std::string& s, const std::filesystem::path& path,
                       std::size_t line, const char* field) {
  if (looks_like_iso_date(s)) {
    try {
      return days_from_iso_date(s);
    } catch (const std::exception& e) {
      parse_fail(path, line, std::string(field) + ": " + e.what());
    }
  }
  return parse_double(s, path, line, field);
}

ReviewLabel parse_review_label(const std::string& s, const std::filesystem::path& path,
                               std::size_t line) {
  if (s == "fake") return ReviewLabel::fake;
  if (s == "non_fake") return ReviewLabel::non_fake;
  parse_fail(path, line, "label '" + s + "' is not one of {fake, non_fake}");
}

// Reads every record of a CSV or JSONL file into (line number, field map)
// pairs keyed by column name. For CSV the required columns are checked
// against the header; extra columns are ignored.
std::vector<std::pair<std::size_t, std::map<std::string, std::string>>> read_records(
    const std::filesystem::path& path, const std::vector<std::string>& required) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  std::vector<std::pair<std::size_t, std::map<std::string, std::string>>> records;
  std::string line;
  std::size_t line_no = 0;

  if (is_jsonl(path)) {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        parse_fail(path, line_no, std::string("invalid JSON: ") + e.what());
      }
      std::map<std::string, std::string> fields;
      for (const std::string& key : required) {
        if (!j.contains(key))
          parse_fail(path, line_no, "missing field '" + key + "'");
        const auto& v = j.at(key);
        if (v.is_string())
          fields[key] = v.get<std::string>();
        else if (v.is_number_integer())
          fields[key] = std::to_string(v.get<std::int64_t>());
        else if (v.is_number())
          fields[key] = util::format_double(v.get<double>());
        else
          parse_fail(path, line_no, "field '" + key + "' has unsupported type");
      }
      records.emplace_back(line_no, std::move(fields));
    }
    return records;
  }

  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": missing header line");
  ++line_no;
  const std::vector<std::string> header = split_csv_line(line);
  std::map<std::string, std::size_t> column_of;
  for (std::size_t i = 0; i < header.size(); ++i) column_of[header[i]] = i;
  for (const std::string& key : required)
    if (!column_of.contains(key))
      throw std::runtime_error(path.string() + ": header is missing required column '" + key +
                               "'");

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() < header.size())
      parse_fail(path, line_no,
                 "expected " + std::to_string(header.size()) + " fields, got " +
                     std::to_string(fields.size()));
    std::map<std::string, std::string> record;
    for (const std::string& key : required) record[key] = fields[column_of[key]];
    records.emplace_back(line_no, std::move(record));
  }
  return records;
}

}  // namespace

double days_from_iso_date(const std::string& iso) {
  if (!looks_like_iso_date(iso))
    throw std::invalid_argument("'" + iso + "' is not an ISO-8601 date (YYYY-MM-DD)");
  const int y = std::stoi(iso.substr(0, 4));
  const unsigned mo = static_cast<unsigned>(std::stoi(iso.substr(5, 2)));
  const unsigned da = static_cast<unsigned>(std::stoi(iso.substr(8, 2)));
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{mo},
                                        std::chrono::day{da}};
  if (!ymd.ok()) throw std::invalid_argument("'" + iso + "' is not a valid calendar date");
  const auto days = std::chrono::sys_days(ymd).time_since_epoch().count();
  return static_cast<double>(days);
}

Dataset load_dataset(const std::filesystem::path& reviews_path,
                     const std::filesystem::path& profiles_path,
                     std::vector<std::string>* warnings) {
  Dataset d;

  const std::vector<std::string> profile_cols = {"reviewer_id", "photo_count", "useful_votes",
                                                 "registration_date"};
  for (const auto& [line_no, rec] : read_records(profiles_path, profile_cols)) {
    ReviewerProfile p;
    p.reviewer_id = rec.at("reviewer_id");
    p.photo_count = parse_int(rec.at("photo_count"), profiles_path, line_no, "photo_count");
    p.useful_votes = parse_int(rec.at("useful_votes"), profiles_path, line_no, "useful_votes");
    p.registration_date =
        parse_day_value(rec.at("registration_date"), profiles_path, line_no, "registration_date");
    if (d.profiles.contains(p.reviewer_id))
      parse_fail(profiles_path, line_no, "duplicate reviewer_id '" + p.reviewer_id + "'");
    d.profiles.emplace(p.reviewer_id, std::move(p));
  }

  const std::vector<std::string> review_cols = {"review_id", "reviewer_id", "business_id",
                                                "rating",    "timestamp",   "label"};
  std::set<std::string> seen_ids;
  std::size_t dropped = 0;
  for (const auto& [line_no, rec] : read_records(reviews_path, review_cols)) {
    Review r;
    r.review_id = rec.at("review_id");
    r.reviewer_id = rec.at("reviewer_id");
    r.business_id = rec.at("business_id");
    const std::int64_t rating = parse_int(rec.at("rating"), reviews_path, line_no, "rating");
    if (rating < 1 || rating > 5)
      parse_fail(reviews_path, line_no, "rating " + std::to_string(rating) + " outside [1,5]");
    r.rating = static_cast<int>(rating);
    r.timestamp = parse_day_value(rec.at("timestamp"), reviews_path, line_no, "timestamp");
    if (r.timestamp < 0.0)
      parse_fail(reviews_path, line_no, "timestamp precedes the epoch (negative day number)");
    r.label = parse_review_label(rec.at("label"), reviews_path, line_no);
    if (!seen_ids.insert(r.review_id).second)
      parse_fail(reviews_path, line_no, "duplicate review_id '" + r.review_id + "'");
    if (!d.profiles.contains(r.reviewer_id)) {
      ++dropped;
      continue;  // reviewer was discarded; mirror that by dropping the review
    }
    d.reviews.push_back(std::move(r));
  }
  if (dropped > 0 && warnings != nullptr)
    warnings->push_back("dropped " + std::to_string(dropped) +
                        " review(s) whose reviewer has no profile row");
  return d;
}

double TagStats::fake_fraction() const {
  const std::size_t total = fake_reviewers + genuine_reviewers + mix_reviewers;
  return total == 0 ? 0.0 : static_cast<double>(fake_reviewers) / static_cast<double>(total);
}
double TagStats::genuine_fraction() const {
  const std::size_t total = fake_reviewers + genuine_reviewers + mix_reviewers;
  return total == 0 ? 0.0 : static_cast<double>(genuine_reviewers) / static_cast<double>(total);
}
double TagStats::mix_fraction() const {
  const std::size_t total = fake_reviewers + genuine_reviewers + mix_reviewers;
  return total == 0 ? 0.0 : static_cast<double>(mix_reviewers) / static_cast<double>(total);
}

TagResult tag_reviewers(const Dataset& d) {
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> counts;  // fake, non-fake
  for (const Review& r : d.reviews) {
    if (r.label == ReviewLabel::unknown)
      throw std::invalid_argument("tag_reviewers: review " + r.review_id +
                                  " carries no fake/non-fake label");
    auto& c = counts[r.reviewer_id];
    if (r.label == ReviewLabel::fake)
      ++c.first;
    else
      ++c.second;
  }

  TagResult result;
  result.dataset.businesses = d.businesses;
  std::set<std::string> mixed;
  for (const auto& [id, profile] : d.profiles) {
    auto it = counts.find(id);
    if (it == counts.end() || it->second.first + it->second.second == 0)
      throw std::invalid_argument("tag_reviewers: unreviewable profile '" + id +
                                  "' (no reviews in dataset)");
    ReviewerProfile tagged = profile;
    if (it->second.second == 0)
      tagged.label = ProfileLabel::fake;
    else if (it->second.first == 0)
      tagged.label = ProfileLabel::genuine;
    else
      tagged.label = ProfileLabel::mix;

    if (*tagged.label == ProfileLabel::mix) {
      ++result.stats.mix_reviewers;
      mixed.insert(id);
      continue;  // discarded entirely
    }
    if (*tagged.label == ProfileLabel::fake)
      ++result.stats.fake_reviewers;
    else
      ++result.stats.genuine_reviewers;
    result.dataset.profiles.emplace(id, std::move(tagged));
  }

  for (const Review& r : d.reviews) {
    if (mixed.contains(r.reviewer_id)) {
      ++result.stats.dropped_reviews;
      continue;
    }
    result.dataset.reviews.push_back(r);
  }
  return result;
}

Dataset derive_business_stats(const Dataset& d) {
  Dataset out;
  out.reviews = d.reviews;
  out.profiles = d.profiles;
  struct Agg {
    double rating_sum = 0.0;
    std::size_t n = 0;
    double min_ts = 0.0;
  };
  std::map<std::string, Agg> agg;
  for (const Review& r : d.reviews) {
    Agg& a = agg[r.business_id];
    a.rating_sum += r.rating;
    a.min_ts = a.n == 0 ? r.timestamp : std::min(a.min_ts, r.timestamp);
    a.n += 1;
  }
  for (const auto& [id, a] : agg) {
    BusinessStats stats;
    stats.business_id = id;
    stats.avg_rating = a.rating_sum / static_cast<double>(a.n);
    stats.first_review_time = a.min_ts;
    out.businesses.emplace(id, std::move(stats));
  }
  return out;
}

void write_reviews_csv(const Dataset& d, const std::filesystem::path& path) {
  std::string out = "review_id,reviewer_id,business_id,rating,timestamp,label\n";
  for (const Review& r : d.reviews) {
    out += util::csv_escape(r.review_id);
    out += ',';
    out += util::csv_escape(r.reviewer_id);
    out += ',';
    out += util::csv_escape(r.business_id);
    out += ',';
    out += std::to_string(r.rating);
    out += ',';
    out += util::format_double(r.timestamp);
    out += ',';
    out += to_string(r.label);
    out += '\n';
  }
  util::write_file_atomic(path, out);
}

void write_profiles_csv(const Dataset& d, const std::filesystem::path& path) {
  std::string out = "reviewer_id,photo_count,useful_votes,registration_date\n";
  for (const auto& [id, p] : d.profiles) {
    out += util::csv_escape(id);
    out += ',';
    out += std::to_string(p.photo_count);
    out += ',';
    out += std::to_string(p.useful_votes);
    out += ',';
    out += util::format_double(p.registration_date);
    out += '\n';
  }
  util::write_file_atomic(path, out);
}

}  // namespace crfdspam
