#include "botscope/geo.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "botscope/csvio.hpp"
#include "botscope/util.hpp"

namespace botscope {

const char* region_name(RegionLabel r) {
  switch (r) {
    case RegionLabel::US: return "US";
    case RegionLabel::China: return "China";
    case RegionLabel::RestOfWorld: return "RestOfWorld";
    case RegionLabel::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::optional<RegionLabel> region_from_name(const std::string& s) {
  if (s == "US") return RegionLabel::US;
  if (s == "China") return RegionLabel::China;
  if (s == "RestOfWorld") return RegionLabel::RestOfWorld;
  if (s == "Unknown") return RegionLabel::Unknown;
  return std::nullopt;
}

const char* geo_stage_name(GeoStage s) {
  switch (s) {
    case GeoStage::Coordinates: return "coordinates";
    case GeoStage::FullString: return "full_string";
    case GeoStage::StringSegment: return "string_segment";
    case GeoStage::ClientSearch: return "client_search";
    case GeoStage::Unresolved: return "unresolved";
  }
  return "unresolved";
}

std::string normalize_place(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (unsigned char c : s) {
    char mapped;
    if (c >= 'A' && c <= 'Z') {
      mapped = static_cast<char>(c - 'A' + 'a');
    } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c >= 0x80) {
      mapped = static_cast<char>(c);  // keep UTF-8 bytes as-is
    } else {
      pending_space = true;  // punctuation and whitespace collapse to one space
      continue;
    }
    if (pending_space && !out.empty()) out += ' ';
    pending_space = false;
    out += mapped;
  }
  return out;
}

RegionLabel Gazetteer::country_to_region(const std::string& alpha2) {
  std::string c;
  for (char ch : alpha2) c += (ch >= 'a' && ch <= 'z') ? static_cast<char>(ch - 'a' + 'A') : ch;
  if (c.empty()) return RegionLabel::Unknown;
  if (c == "US") return RegionLabel::US;
  if (c == "CN") return RegionLabel::China;
  return RegionLabel::RestOfWorld;
}

std::optional<std::string> Gazetteer::lookup(const std::string& place) const {
  auto it = entries.find(normalize_place(place));
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

namespace {

struct BoundingBox {
  const char* code;
  double lat_min, lat_max, lon_min, lon_max;
};

// Ordered smaller/less-ambiguous areas first; first match wins.
constexpr BoundingBox kCountryBoxes[] = {
    {"TW", 21.8, 25.4, 119.9, 122.1},
    {"KR", 33.0, 38.7, 124.6, 130.9},
    {"JP", 30.0, 45.6, 129.3, 145.9},
    {"GB", 49.9, 60.9, -8.6, 1.8},
    {"FR", 41.3, 51.1, -5.2, 9.6},
    {"DE", 47.2, 55.1, 5.8, 15.1},
    {"IN", 6.5, 35.5, 68.1, 97.4},
    {"CN", 18.0, 53.6, 73.5, 134.8},
    {"US", 24.5, 49.4, -125.0, -66.9},   // contiguous states
    {"US", 54.5, 71.5, -168.0, -141.0},  // Alaska (west of the -141 border)
    {"US", 18.5, 22.5, -160.5, -154.5},  // Hawaii
    {"CA", 41.7, 83.1, -141.0, -52.6},
    {"BR", -33.8, 5.3, -73.9, -34.8},
    {"AU", -43.7, -10.6, 112.9, 153.7},
    {"RU", 41.2, 81.9, 19.6, 180.0},
};

}  // namespace

std::optional<std::string> Gazetteer::country_from_coordinates(double lat, double lon) {
  for (const auto& b : kCountryBoxes) {
    if (lat >= b.lat_min && lat <= b.lat_max && lon >= b.lon_min && lon <= b.lon_max)
      return std::string(b.code);
  }
  return std::nullopt;
}

Gazetteer load_gazetteer(const std::string& path) {
  auto table = csv::read_file(path, /*expect_header=*/false, /*allow_comments=*/true);
  Gazetteer g;
  std::unordered_map<std::string, std::string> first_seen;
  std::unordered_map<std::string, bool> ambiguous;
  for (const auto& row : table.rows) {
    if (row.size() != 2 || row[0].empty() || row[1].size() != 2) {
      g.warnings.push_back("malformed row skipped: " + csv::join_row(row));
      continue;
    }
    std::string key = normalize_place(row[0]);
    std::string code = lower_ascii(row[1]);
    for (char& c : code) c = static_cast<char>(c - 'a' + 'A');
    if (key.empty()) {
      g.warnings.push_back("empty place skipped");
      continue;
    }
    auto it = first_seen.find(key);
    if (it == first_seen.end()) {
      first_seen.emplace(key, code);
    } else if (it->second != code && !ambiguous[key]) {
      ambiguous[key] = true;
      g.warnings.push_back("ambiguous place dropped: " + key);
    }
  }
  for (const auto& [k, v] : first_seen)
    if (!ambiguous[k]) g.entries.emplace(k, v);
  return g;
}

namespace {

// Offline string resolution: full string, then comma segments right to left.
std::optional<std::pair<std::string, GeoStage>> resolve_string_offline(const std::string& loc,
                                                                       const Gazetteer& gaz) {
  if (auto c = gaz.lookup(loc)) return std::make_pair(*c, GeoStage::FullString);
  std::vector<std::string> segments;
  size_t start = 0;
  while (true) {
    size_t comma = loc.find(',', start);
    if (comma == std::string::npos) {
      segments.push_back(loc.substr(start));
      break;
    }
    segments.push_back(loc.substr(start, comma - start));
    start = comma + 1;
  }
  if (segments.size() > 1) {
    for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
      if (auto c = gaz.lookup(*it)) return std::make_pair(*c, GeoStage::StringSegment);
    }
  }
  return std::nullopt;
}

}  // namespace

GeoResolution resolve_location(const UserProfile& profile, const Gazetteer& gazetteer,
                               GeocoderClient* client) {
  GeoResolution res;

  std::optional<std::string> coord_country;
  if (profile.declared_coordinates) {
    const auto& c = *profile.declared_coordinates;
    if (client) coord_country = client->reverse_country(c.lat, c.lon);
    if (!coord_country) coord_country = Gazetteer::country_from_coordinates(c.lat, c.lon);
  }

  std::optional<std::pair<std::string, GeoStage>> string_hit;
  if (profile.declared_location)
    string_hit = resolve_string_offline(*profile.declared_location, gazetteer);

  if (coord_country) {
    res.region = Gazetteer::country_to_region(*coord_country);
    res.stage = GeoStage::Coordinates;
    if (string_hit && Gazetteer::country_to_region(string_hit->first) != res.region)
      res.disagreement = true;
    return res;
  }
  if (string_hit) {
    res.region = Gazetteer::country_to_region(string_hit->first);
    res.stage = string_hit->second;
    return res;
  }
  if (client && profile.declared_location) {
    if (auto c = client->search_country(*profile.declared_location)) {
      res.region = Gazetteer::country_to_region(*c);
      res.stage = GeoStage::ClientSearch;
      return res;
    }
  }
  return res;  // Unknown / Unresolved
}

std::unordered_map<std::string, RegionLabel> resolve_all(const Corpus& corpus,
                                                         const Gazetteer& gazetteer,
                                                         GeocoderClient* client,
                                                         ResolutionReport* report) {
  std::unordered_map<std::string, RegionLabel> out;
  out.reserve(corpus.users.size());
  int64_t failures_before = client ? client->failures() : 0;
  for (const auto& [id, profile] : corpus.users) {
    GeoResolution r = resolve_location(profile, gazetteer, client);
    out.emplace(id, r.region);
    if (report) {
      ++report->by_region[region_name(r.region)];
      ++report->by_stage[geo_stage_name(r.stage)];
      if (r.disagreement) ++report->disagreements;
    }
  }
  if (report && client) report->client_failures = client->failures() - failures_before;
  return out;
}

std::string ResolutionReport::to_json() const {
  nlohmann::json j;
  j["by_region"] = nlohmann::json::object();
  for (const auto& [k, v] : by_region) j["by_region"][k] = v;
  j["by_stage"] = nlohmann::json::object();
  for (const auto& [k, v] : by_stage) j["by_stage"][k] = v;
  j["disagreements"] = disagreements;
  j["client_failures"] = client_failures;
  return j.dump(2) + "\n";
}

}  // namespace botscope
