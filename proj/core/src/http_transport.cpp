#include <regex>

#include <httplib.h>

#include "lfpc/ingest.hpp"

namespace lfpc {

HttpGet default_http_get() {
  return [](const std::string& url, std::chrono::seconds timeout) -> HttpResponse {
    static const std::regex url_re(R"(^(https?://[^/]+)(/.*)?$)");
    std::smatch m;
    if (!std::regex_match(url, m, url_re)) return {0, {}, "malformed URL '" + url + "'"};
    const std::string origin = m[1].str();
    const std::string target = m[2].matched ? m[2].str() : "/";

    httplib::Client client(origin);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_follow_location(true);
    auto res = client.Get(target);
    if (!res) return {0, {}, httplib::to_string(res.error())};
    return {res->status, res->body, {}};
  };
}

}  // namespace lfpc
