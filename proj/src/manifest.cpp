#include "ransomtrace/manifest.hpp"

#include <openssl/evp.h>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>

#include "ransomtrace/errors.hpp"

namespace ransomtrace {

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());

    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
        EVP_MD_CTX_free(ctx);
        throw Error("cannot initialize SHA-256");
    }
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0)
        EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));

    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);

    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
    nlohmann::json j{{"stage", manifest.stage},
                     {"campaign", manifest.campaign},
                     {"provider", manifest.provider},
                     {"store_path", manifest.store_path},
                     {"price_path", manifest.price_path},
                     {"config_hash", manifest.config_hash},
                     {"tool_version", manifest.tool_version},
                     {"started_at", manifest.started_at},
                     {"finished_at", manifest.finished_at}};

    // Write-then-rename so a crashed run never leaves a torn manifest.
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error("cannot write manifest to " + tmp.string());
        out << j.dump(2) << "\n";
        if (!out.flush()) throw Error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace ransomtrace
