#pragma once

#include <string>
#include <string_view>

namespace sc3sim {

// Streaming SHA-256, lowercase hex output.
class Sha256 {
public:
    Sha256();
    ~Sha256();
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    void update(std::string_view bytes);
    std::string hex_digest();

private:
    void* ctx_;
};

std::string sha256_hex(std::string_view bytes);

} // namespace sc3sim
