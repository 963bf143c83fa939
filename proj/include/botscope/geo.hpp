#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "botscope/corpus.hpp"

namespace botscope {

enum class RegionLabel { US, China, RestOfWorld, Unknown };

const char* region_name(RegionLabel r);
std::optional<RegionLabel> region_from_name(const std::string& s);

enum class GeoStage { Coordinates, FullString, StringSegment, ClientSearch, Unresolved };
const char* geo_stage_name(GeoStage s);

// Case-folds, strips punctuation, collapses whitespace. Idempotent.
std::string normalize_place(const std::string& s);

/// Mirrors Nominatim's /reverse and /search responses (address.country_code).
/// Implementations return ISO-3166 alpha-2 codes, uppercase.
class GeocoderClient {
 public:
  virtual ~GeocoderClient() = default;
  virtual std::optional<std::string> reverse_country(double lat, double lon) = 0;
  virtual std::optional<std::string> search_country(const std::string& query) = 0;
  virtual int64_t failures() const { return 0; }
};

class HttpGeocoderClient : public GeocoderClient {
 public:
  explicit HttpGeocoderClient(std::string base_url, int timeout_ms = 2000);
  std::optional<std::string> reverse_country(double lat, double lon) override;
  std::optional<std::string> search_country(const std::string& query) override;
  int64_t failures() const override { return failures_; }

 private:
  std::optional<std::string> get_country(const std::string& path_and_query);
  std::string host_;
  int port_ = 80;
  bool https_ = false;
  int timeout_ms_;
  int64_t failures_ = 0;
};

struct Gazetteer {
  std::unordered_map<std::string, std::string> entries;  // normalized place -> alpha-2
  std::vector<std::string> warnings;                     // ambiguous/malformed rows

  std::optional<std::string> lookup(const std::string& place) const;

  // US -> US, CN -> China, any other non-empty code -> RestOfWorld.
  static RegionLabel country_to_region(const std::string& alpha2);

  // Coarse built-in country bounding boxes, first match wins. Fallback for
  // declared coordinates when no geocoder client is configured; border
  // regions of neighbouring countries may misattribute (see README).
  static std::optional<std::string> country_from_coordinates(double lat, double lon);
};

// CSV rows `place,iso3166_alpha2`; '#' comments. Duplicate keys mapping to
// conflicting countries are dropped with a warning. Unreadable file throws.
Gazetteer load_gazetteer(const std::string& path);

struct GeoResolution {
  RegionLabel region = RegionLabel::Unknown;
  GeoStage stage = GeoStage::Unresolved;
  bool disagreement = false;  // coordinates and string evidence conflict
};

/// Resolution order: declared coordinates (client reverse lookup, else the
/// built-in bounding boxes), declared location string (full, then comma
/// segments right to left), client forward search, Unknown. Client failures
/// fall through to the next stage.
GeoResolution resolve_location(const UserProfile& profile, const Gazetteer& gazetteer,
                               GeocoderClient* client = nullptr);

struct ResolutionReport {
  std::map<std::string, int64_t> by_region;
  std::map<std::string, int64_t> by_stage;
  int64_t disagreements = 0;
  int64_t client_failures = 0;
  std::string to_json() const;
};

std::unordered_map<std::string, RegionLabel> resolve_all(const Corpus& corpus,
                                                         const Gazetteer& gazetteer,
                                                         GeocoderClient* client = nullptr,
                                                         ResolutionReport* report = nullptr);

}  // namespace botscope
