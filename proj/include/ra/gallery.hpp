#ifndef RA_GALLERY_HPP
#define RA_GALLERY_HPP

#include "ra/automaton.hpp"

namespace ra {
namespace gallery {

/// Single-symbol automaton over one register x: stores each input, loops
/// while inputs do not decrease, detours on a strict drop and must recover
/// with a non-drop; two consecutive strict drops reject.
RegisterAutomaton drop_recover();

/// drop_recover with the initial transition guarded x <= p, which reads x
/// before anything was stored. Not well-formed.
RegisterAutomaton drop_recover_unset_read();

/// Proportional controller: set point, gain, then sensor/control rounds with
/// the control value bounded by the actuator range.
RegisterAutomaton proportional_controller();

/// One a-step, split into p > 0 and p <= 0 branches.
RegisterAutomaton sign_split();

/// One unguarded a-step. Trace equivalent to sign_split, not symbolic trace
/// equivalent.
RegisterAutomaton sign_free();

/// Two automata for the same three-word symbolic language (positive pair,
/// zero pair, negative-sum chain); they route the p = 0 branch differently,
/// so their induced location equivalences differ.
RegisterAutomaton zero_route_a();
RegisterAutomaton zero_route_b();

/// Family over registers x1..x_{2n}: accepts 2n a-inputs, storing all of
/// them, then one b-input when consecutive equalities in the first half
/// mirror those in the second half.
RegisterAutomaton equality_pattern(int n);

} // namespace gallery
} // namespace ra

#endif
