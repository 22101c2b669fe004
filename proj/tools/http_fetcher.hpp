#pragma once

#include <chrono>
#include <mutex>
#include <string>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include "sentimentcast/error.hpp"
#include "sentimentcast/ingest.hpp"

namespace sentimentcast {

/// Live fetcher over HTTP(S). Requests are spaced at least `delay` apart
/// across all threads.
class HttpFetcher : public PageFetcher {
 public:
  explicit HttpFetcher(std::chrono::milliseconds delay = std::chrono::milliseconds(1000)) : delay_(delay) {}

  std::string fetch(const std::string& url) override {
    if (!is_absolute_url(url)) throw Error(ErrorKind::fetch, "not an absolute URL: " + url);
    const auto scheme_end = url.find("://");
    const auto path_start = url.find('/', scheme_end + 3);
    const std::string origin = url.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    pace();
    httplib::Client client(origin);
    client.set_follow_location(true);
    client.set_connection_timeout(10);
    client.set_read_timeout(20);
    client.set_default_headers({{"User-Agent", "sentimentcast/1.0"}});
    auto res = client.Get(path);
    if (!res) throw Error(ErrorKind::fetch, url + ": " + httplib::to_string(res.error()));
    if (res->status != 200) throw Error(ErrorKind::fetch, url + ": HTTP " + std::to_string(res->status));
    return res->body;
  }

  bool concurrent() const override { return true; }

 private:
  void pace() {
    std::unique_lock lock(mutex_);
    const auto now = std::chrono::steady_clock::now();
    if (now < next_slot_) {
      const auto wait = next_slot_ - now;
      next_slot_ += delay_;
      lock.unlock();
      std::this_thread::sleep_for(wait);
    } else {
      next_slot_ = now + delay_;
    }
  }

  std::chrono::milliseconds delay_;
  std::mutex mutex_;
  std::chrono::steady_clock::time_point next_slot_{};
};

}  // namespace sentimentcast
