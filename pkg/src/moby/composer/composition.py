"""Stitching per-mode machines into one controller."""

import logging
from collections import deque
from typing import AbstractSet, Dict, Tuple

from moby.core.exceptions import MultipleJumps, UnknownTargetMode
from moby.synth.MealyMachine import Letter, MealyMachine, input_letters

from .CompositionManifest import CompositionManifest

logger = logging.getLogger(__name__)


def erase_fresh(letter: AbstractSet[str], fresh: AbstractSet[str]) -> Letter:
    return frozenset(a for a in letter if a not in fresh)


def compose(manifest: CompositionManifest) -> MealyMachine:
    """One machine that runs the current mode's machine and restarts the
    target mode's machine whenever a jump output is raised.

    The output on a jump step is the departing machine's. Only states
    reachable from the start mode are kept; they are named "mode:state".

    Raises:
        MultipleJumps: a transition raises more than one jump output
        UnknownTargetMode: a jump leads to a mode without a machine
    """
    if manifest.start_mode not in manifest.machines:
        raise UnknownTargetMode(f"Start mode {manifest.start_mode} has no machine")

    def label(node: Tuple[int, str]) -> str:
        return f"{manifest.names.get(node[0], node[0])}:{node[1]}"

    def enter(mode: int) -> Tuple[int, str]:
        machine = manifest.machines.get(mode)
        if machine is None:
            raise UnknownTargetMode(f"No machine for mode {mode}")
        return mode, machine.initial

    start = enter(manifest.start_mode)
    order = [start]
    seen = {start}
    transitions: Dict[Tuple[str, Letter], Tuple[Letter, str]] = {}
    queue = deque([start])
    jumps_taken = 0
    while queue:
        node = queue.popleft()
        mode, state = node
        machine = manifest.machines[mode]
        table = manifest.jumps.get(mode, {})
        for letter in input_letters(manifest.inputs):
            output, local = machine.step(state, letter)
            raised = [j for j, name in table.items() if name in output]
            if len(raised) > 1:
                raise MultipleJumps(
                    f"State {label(node)} raises {[table[j] for j in raised]} "
                    f"on input {sorted(letter)}"
                )
            if raised:
                target = enter(raised[0])
                jumps_taken += 1
            else:
                target = (mode, local)
            if target not in seen:
                seen.add(target)
                order.append(target)
                queue.append(target)
            transitions[(label(node), letter)] = (
                erase_fresh(output, manifest.fresh) & set(manifest.outputs),
                label(target),
            )

    logger.info(
        f"Composed {len(manifest.machines)} machines into {len(order)} states "
        f"({jumps_taken} jump transitions)"
    )
    return MealyMachine(
        [label(n) for n in order],
        label(start),
        manifest.inputs,
        manifest.outputs,
        transitions,
    )
