import unittest

from exocap.exceptions import DuplicateJoint, LimitOrderError, ParseError
from exocap.retarget import builtin_hand_names, get_hand_model, load_hand_model


class TestLoadHandModel(unittest.TestCase):
    def test_parse(self):
        model = load_hand_model(
            "name: pincer\njoint: a 0 1\n# thumb\njoint: b -0.5 0.5\n"
        )
        assert model.name == "pincer"
        assert model.dof == 2
        assert model.joint_names == ["a", "b"]
        assert list(model.lower) == [0.0, -0.5]
        assert list(model.upper) == [1.0, 0.5]

    def test_limit_order(self):
        with self.assertRaises(LimitOrderError) as ctx:
            load_hand_model("name: h\njoint: a 1.0 1.0\n")
        assert ctx.exception.joint == "a"

    def test_duplicate_joint(self):
        self.assertRaises(
            DuplicateJoint,
            load_hand_model,
            "name: h\njoint: a 0 1\njoint: a 0 2\n",
        )

    def test_missing_name(self):
        self.assertRaises(ParseError, load_hand_model, "joint: a 0 1\n")

    def test_no_joints(self):
        self.assertRaises(ParseError, load_hand_model, "name: h\n")

    def test_malformed_joint(self):
        with self.assertRaises(ParseError) as ctx:
            load_hand_model("name: h\njoint: a 0\n")
        assert ctx.exception.line == 2

    def test_contains(self):
        model = load_hand_model("name: h\njoint: a 0 1\njoint: b 0 2\n")
        assert model.contains([0.5, 2.0])
        assert not model.contains([1.5, 0.0])
        assert not model.contains([0.5])


class TestBuiltinHands(unittest.TestCase):
    def test_names(self):
        assert builtin_hand_names() == ["gripper1", "hand16", "inspire6"]

    def test_degrees_of_freedom(self):
        dofs = {name: get_hand_model(name).dof for name in builtin_hand_names()}
        assert dofs == {"gripper1": 1, "hand16": 16, "inspire6": 6}
