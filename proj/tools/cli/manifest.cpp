#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <ctime>
#include <fstream>
#include <memory>

#include "solitonlab/errors.hpp"

#ifndef SOLITONLAB_VERSION
#define SOLITONLAB_VERSION "0.0.0"
#endif

namespace solitonlab::cli {

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw std::runtime_error("SHA-256 unavailable");
    }
  }

  void update(const void* data, std::size_t size) { EVP_DigestUpdate(ctx_.get(), data, size); }

  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_.get(), md.data(), &len);
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
      out += digits[md[i] >> 4];
      out += digits[md[i] & 0xf];
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

std::string utc_format(std::chrono::system_clock::time_point t, const char* fmt) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, fmt, &tm);
  return buf;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  Sha256 h;
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

std::string utc_iso8601(std::chrono::system_clock::time_point t) {
  return utc_format(t, "%Y-%m-%dT%H:%M:%SZ");
}

std::string utc_compact(std::chrono::system_clock::time_point t) {
  return utc_format(t, "%Y%m%dT%H%M%SZ");
}

std::string canonical(const nlohmann::json& doc) { return doc.dump(); }

nlohmann::json RunManifest::to_json() const {
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : outputs) files.push_back({{"path", f.relative.generic_string()}, {"sha256", f.sha256}});
  return {{"tool", "solitonlab"},
          {"version", version},
          {"experiment", experiment},
          {"seed", seed},
          {"config_digest", config_digest},
          {"started_utc", started_utc},
          {"finished_utc", finished_utc},
          {"outputs", std::move(files)}};
}

const char* tool_version() { return SOLITONLAB_VERSION; }

}  // namespace solitonlab::cli
