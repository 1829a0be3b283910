#include "memguard/util/digest.hpp"

namespace memguard {

std::string to_hex(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

std::string digest_hex_wide(std::string_view data) {
    // second stream: different offset basis so the halves are independent
    return to_hex(fnv1a64(data)) + to_hex(fnv1a64(data, 0xcbf29ce484222325ull ^ 0x9e3779b97f4a7c15ull));
}

}  // namespace memguard
