#include "adaimpact/hash.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

namespace adaimpact {

struct ContentHasher::State {
  EVP_MD_CTX *ctx = nullptr;
};

ContentHasher::ContentHasher() : state_(new State) {
  state_->ctx = EVP_MD_CTX_new();
  if (state_->ctx == nullptr || EVP_DigestInit_ex(state_->ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(state_->ctx);
    delete state_;
    throw std::runtime_error("sha256 initialisation failed");
  }
}

ContentHasher::~ContentHasher() {
  EVP_MD_CTX_free(state_->ctx);
  delete state_;
}

void ContentHasher::update(std::string_view data) {
  EVP_DigestUpdate(state_->ctx, data.data(), data.size());
}

std::string ContentHasher::finish() {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(state_->ctx, digest.data(), &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string content_hash(std::string_view data) {
  ContentHasher h;
  h.update(data);
  return h.finish();
}

} // namespace adaimpact
