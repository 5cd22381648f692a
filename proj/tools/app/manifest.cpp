#include "app/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>
#include <nlohmann/json.hpp>

#include "tweetswing/errors.hpp"

namespace tweetswing::app {

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());

    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw DataError("sha256 init failed");
    std::array<char, 1 << 16> buf;
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest;
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);

    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

void Manifest::input(const std::string& role, const std::filesystem::path& path) { inputs_.emplace_back(role, path); }

void Manifest::output(const std::filesystem::path& path) { outputs_.push_back(path); }

void Manifest::config(const std::string& key, std::string value) { config_[key] = std::move(value); }

void Manifest::count(const std::string& key, std::uint64_t value) { counts_[key] = value; }

void Manifest::write(const std::filesystem::path& path) const {
    nlohmann::json doc;
    doc["stage"] = stage_;
    doc["config"] = config_;
    doc["counts"] = counts_;
    auto& inputs = doc["inputs"] = nlohmann::json::array();
    for (const auto& [role, p] : inputs_) {
        inputs.push_back({{"role", role}, {"path", p.generic_string()}, {"sha256", sha256_file(p)}});
    }
    auto& outputs = doc["outputs"] = nlohmann::json::array();
    for (const auto& p : outputs_) {
        outputs.push_back({{"path", p.generic_string()}, {"sha256", sha256_file(p)}});
    }

    std::ofstream out(path, std::ios::binary);
    out << doc.dump(2) << '\n';
    if (!out) throw DataError("cannot write " + path.string());
}

}  // namespace tweetswing::app
