from __future__ import annotations

import dataclasses
import os

import numpy as np

from exocap.config import ConfigFile, parse_config, read_config
from exocap.definitions import HANDS_DIR
from exocap.exceptions import DuplicateJoint, LimitOrderError, ParseError

HAND_SUFFIX = ".hand"


@dataclasses.dataclass(frozen=True)
class JointLimit:
    name: str
    lower: float
    upper: float


@dataclasses.dataclass(frozen=True)
class HandModel:
    """Joint roster and limits of a target hand.

    Parameters
    ----------
    name : str

    joints : tuple of JointLimit
        In declaration order; command vectors follow this order.
    """

    name: str
    joints: tuple[JointLimit, ...]

    @property
    def dof(self) -> int:
        return len(self.joints)

    @property
    def joint_names(self) -> list[str]:
        return [j.name for j in self.joints]

    @property
    def lower(self) -> np.ndarray:
        return np.array([j.lower for j in self.joints])

    @property
    def upper(self) -> np.ndarray:
        return np.array([j.upper for j in self.joints])

    def contains(self, command) -> bool:
        """Returns True if ``command`` is a valid command for this hand."""
        command = np.asarray(command, dtype=float)
        return (
            command.shape == (self.dof,)
            and bool(np.all(np.isfinite(command)))
            and bool(np.all(command >= self.lower))
            and bool(np.all(command <= self.upper))
        )


def _hand_model_from_config(config: ConfigFile) -> HandModel:
    name_entry = config.get("name")
    if name_entry is None or not name_entry.value:
        raise ParseError(line=0, reason="missing hand 'name'")

    joints = []
    seen = set()
    for entry in config.get_all("joint"):
        tokens = entry.tokens
        if len(tokens) != 3:
            raise ParseError(
                line=entry.line,
                reason=f"expected 'joint: <name> <lower> <upper>', got"
                f" '{entry.value}'",
            )
        joint_name = tokens[0]
        try:
            lower, upper = float(tokens[1]), float(tokens[2])
        except ValueError:
            raise ParseError(
                line=entry.line, reason="joint limits must be numbers"
            ) from None
        if not (np.isfinite(lower) and np.isfinite(upper)):
            raise ParseError(
                line=entry.line, reason="joint limits must be finite"
            )
        if joint_name in seen:
            raise DuplicateJoint(joint=joint_name)
        if not lower < upper:
            raise LimitOrderError(joint=joint_name, lower=lower, upper=upper)
        seen.add(joint_name)
        joints.append(JointLimit(joint_name, lower, upper))

    if not joints:
        raise ParseError(line=0, reason="hand config declares no joints")
    return HandModel(name=name_entry.value, joints=tuple(joints))


def load_hand_model(text: str) -> HandModel:
    """Parses a hand config.

    The config names the hand once and declares one joint per line, in
    command order::

        name: gripper1
        joint: aperture 0.0 0.08

    Parameters
    ----------
    text : str

    Returns
    -------
    HandModel

    Raises
    ------
    ParseError, LimitOrderError, DuplicateJoint
    """
    return _hand_model_from_config(parse_config(text))


def read_hand_model(path: str | os.PathLike) -> HandModel:
    """Reads a hand config file."""
    return _hand_model_from_config(read_config(path))


def builtin_hand_names() -> list[str]:
    return sorted(
        f[: -len(HAND_SUFFIX)]
        for f in os.listdir(HANDS_DIR)
        if f.endswith(HAND_SUFFIX)
    )


def get_hand_model(name_or_path: str | os.PathLike) -> HandModel:
    """Loads a shipped hand model by name, or a hand config by path."""
    builtin = os.path.join(HANDS_DIR, f"{name_or_path}{HAND_SUFFIX}")
    if os.path.isfile(builtin):
        return read_hand_model(builtin)
    return read_hand_model(name_or_path)
