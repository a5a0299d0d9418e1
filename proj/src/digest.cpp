#include "fmtk/digest.hpp"

namespace fmtk {

namespace {
// 128-bit FNV-1a, schoolbook 128-bit multiply by the FNV prime 2^88 + 2^8 + 0x3b.
struct U128 {
    std::uint64_t hi, lo;
};

U128 mul_fnv_prime(U128 x) {
    // prime = (1 << 88) | 0x13b
    const std::uint64_t plo = 0x13b;
    // x * 2^88 = (x.lo << 88) | ... only low 128 bits kept
    std::uint64_t hi = (x.lo << 24);  // x.lo * 2^88 contributes to hi bits 88..127
    // x * plo
    __uint128_t low_prod = static_cast<__uint128_t>(x.lo) * plo;
    std::uint64_t lo = static_cast<std::uint64_t>(low_prod);
    hi += static_cast<std::uint64_t>(low_prod >> 64);
    hi += x.hi * plo;
    return {hi, lo};
}
}  // namespace

Digest fnv128(std::string_view bytes) {
    // FNV-1a 128-bit offset basis.
    U128 h{0x6c62272e07bb0142ull, 0x62b821756295c58dull};
    for (unsigned char c : bytes) {
        h.lo ^= c;
        h = mul_fnv_prime(h);
    }
    return Digest{h.hi, h.lo};
}

std::string Digest::hex() const {
    static const char* k = "0123456789abcdef";
    std::string out(32, '0');
    for (int i = 0; i < 16; ++i) out[15 - i] = k[(hi >> (4 * i)) & 0xf];
    for (int i = 0; i < 16; ++i) out[31 - i] = k[(lo >> (4 * i)) & 0xf];
    return out;
}

}  // namespace fmtk
