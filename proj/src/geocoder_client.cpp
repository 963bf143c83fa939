#include <json.hpp>

#define CPPHTTPLIB_NO_EXCEPTIONS
#include <httplib.h>

#include "botscope/geo.hpp"
#include "botscope/util.hpp"

namespace botscope {

namespace {

// Splits "http://host:port" into scheme/host/port.
void parse_base_url(const std::string& url, std::string& host, int& port, bool& https) {
  std::string rest = url;
  https = false;
  if (rest.rfind("https://", 0) == 0) {
    https = true;
    rest = rest.substr(8);
  } else if (rest.rfind("http://", 0) == 0) {
    rest = rest.substr(7);
  }
  while (!rest.empty() && rest.back() == '/') rest.pop_back();
  auto colon = rest.rfind(':');
  if (colon != std::string::npos && colon > 0) {
    host = rest.substr(0, colon);
    port = std::atoi(rest.c_str() + colon + 1);
  } else {
    host = rest;
    port = https ? 443 : 80;
  }
}

std::string url_encode(const std::string& s) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
        c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 15];
    }
  }
  return out;
}

}  // namespace

HttpGeocoderClient::HttpGeocoderClient(std::string base_url, int timeout_ms)
    : timeout_ms_(timeout_ms) {
  parse_base_url(base_url, host_, port_, https_);
}

std::optional<std::string> HttpGeocoderClient::get_country(const std::string& path_and_query) {
  httplib::Client cli(host_, port_);
  cli.set_connection_timeout(0, timeout_ms_ * 1000);
  cli.set_read_timeout(0, timeout_ms_ * 1000);
  auto res = cli.Get(path_and_query.c_str());
  if (!res || res->status != 200) {
    ++failures_;
    return std::nullopt;
  }
  auto j = nlohmann::json::parse(res->body, nullptr, false);
  if (j.is_discarded()) {
    ++failures_;
    return std::nullopt;
  }
  // /search returns an array of candidates; /reverse a single object.
  const nlohmann::json* obj = &j;
  if (j.is_array()) {
    if (j.empty()) return std::nullopt;
    obj = &j[0];
  }
  if (!obj->is_object() || !obj->contains("address")) return std::nullopt;
  const auto& addr = (*obj)["address"];
  if (!addr.is_object() || !addr.contains("country_code")) return std::nullopt;
  std::string code = addr["country_code"].get<std::string>();
  for (char& c : code)
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  if (code.size() != 2) return std::nullopt;
  return code;
}

std::optional<std::string> HttpGeocoderClient::reverse_country(double lat, double lon) {
  return get_country("/reverse?format=jsonv2&lat=" + format_double(lat) +
                     "&lon=" + format_double(lon));
}

std::optional<std::string> HttpGeocoderClient::search_country(const std::string& query) {
  return get_country("/search?format=jsonv2&limit=1&q=" + url_encode(query));
}

}  // namespace botscope
