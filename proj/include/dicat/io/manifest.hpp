// manifest.hpp: output bundle with SHA-256 digests, timings and diagnostics

#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "json.hpp"

#include "dicat/io/csv.hpp"

namespace dicat::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* version = "1.0.0";

inline std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

struct EmittedFile {
    std::string name;
    std::string sha256;
    std::size_t bytes{0};
};

/// Files, timings and diagnostics of one run. Files are written in call order.
class ResultBundle {
public:
    explicit ResultBundle(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec || !std::filesystem::is_directory(dir_))
            throw Error("cannot create output directory " + dir_.string());
    }

    void emit(const std::string& name, const std::string& content) {
        write_file(dir_ / name, content);
        files_.push_back({name, sha256_hex(content), content.size()});
    }

    template <class F>
    auto timed(const std::string& label, F&& body) {
        const auto t0 = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(body())>) {
            body();
            record(label, t0);
        } else {
            auto r = body();
            record(label, t0);
            return r;
        }
    }

    Json& diagnostics() { return diagnostics_; }
    [[nodiscard]] const Json& diagnostics() const { return diagnostics_; }
    [[nodiscard]] const std::vector<EmittedFile>& files() const { return files_; }
    [[nodiscard]] const std::filesystem::path& dir() const { return dir_; }

    [[nodiscard]] const EmittedFile* find(const std::string& name) const {
        for (const auto& f : files_)
            if (f.name == name) return &f;
        return nullptr;
    }

    /// manifest.json: digests of every emitted file plus diagnostics and timings.
    void write_manifest(const std::string& kind, const std::string& preset) {
        Json m;
        m["tool"] = "dicat";
        m["version"] = version;
        m["kind"] = kind;
        m["preset"] = preset;
        Json files = Json::array();
        for (const auto& f : files_) files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
        m["files"] = files;
        m["diagnostics"] = diagnostics_;
        m["timings_s"] = timings_;
        write_file(dir_ / "manifest.json", m.dump(2) + "\n");
    }

private:
    void record(const std::string& label, std::chrono::steady_clock::time_point t0) {
        timings_[label] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    std::filesystem::path dir_;
    std::vector<EmittedFile> files_;
    Json diagnostics_ = Json::object();
    Json timings_ = Json::object();
};

} // namespace dicat::io
