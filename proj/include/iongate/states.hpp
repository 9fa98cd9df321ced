#pragma once

#include <array>
#include <string_view>

namespace iongate {

// Axial normal modes of the two-ion crystal.
enum class Mode { Com, Breathing };

// Two-qubit internal basis states |alpha_1 alpha_2>, ion 1 first.
enum class BasisState { DownDown = 0, DownUp = 1, UpDown = 2, UpUp = 3 };

inline constexpr std::array<BasisState, 4> kAllStates = {
    BasisState::DownDown, BasisState::DownUp,
    BasisState::UpDown, BasisState::UpUp};

constexpr int state_index(BasisState s) { return static_cast<int>(s); }

// Spin of the given ion (0 or 1) in the basis state: +1 for down, -1 for up.
constexpr int spin_sign(BasisState s, int ion) {
    const int bits = static_cast<int>(s);
    const int up = (ion == 0) ? (bits >> 1) : (bits & 1);
    return up ? -1 : +1;
}

// Population swap |down> <-> |up> on both ions, as done by the pi pulses of
// the spin-echo sequence.
constexpr BasisState flip_both(BasisState s) {
    return static_cast<BasisState>(3 - static_cast<int>(s));
}

// Exchange the roles of ion 1 and ion 2.
constexpr BasisState swap_ions(BasisState s) {
    const int bits = static_cast<int>(s);
    return static_cast<BasisState>(((bits & 1) << 1) | (bits >> 1));
}

constexpr std::string_view state_label(BasisState s) {
    switch (s) {
        case BasisState::DownDown: return "dd";
        case BasisState::DownUp: return "du";
        case BasisState::UpDown: return "ud";
        case BasisState::UpUp: return "uu";
    }
    return "??";
}

constexpr std::string_view mode_label(Mode m) {
    return m == Mode::Com ? "com" : "breathing";
}

} // namespace iongate
