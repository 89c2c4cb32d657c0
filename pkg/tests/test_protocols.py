"""Protocol conformance tests."""

from typing import Dict, Hashable, Optional

from veccoh import ActionCache, DiffOp, ModuleElement, ModuleSpec, create_module
from veccoh.modules import DictActionCache
from veccoh.polyfields import VectorField


class MockActionCache:
    """Mock cache implementing the ActionCache protocol."""

    def __init__(self):
        """Initialize an empty store and counters."""
        self.store: Dict[Hashable, dict] = {}
        self.get_calls = 0
        self.set_calls = 0

    def get(self, key: Hashable) -> Optional[dict]:
        self.get_calls += 1
        return self.store.get(key)

    def set(self, key: Hashable, value: dict) -> None:
        self.set_calls += 1
        self.store[key] = value

    def clear(self) -> None:
        self.store.clear()


def _uses_cache(cache: ActionCache) -> ActionCache:
    return cache


def _uses_element(v: ModuleElement) -> ModuleElement:
    return v.scale(2) - v


class TestActionCacheProtocol:
    """Test ActionCache conformance."""

    def test_dict_cache_conforms(self):
        """Test that DictActionCache offers get/set/clear."""
        cache = _uses_cache(DictActionCache())
        cache.set("k", {("a",): 1})
        assert cache.get("k") == {("a",): 1}
        cache.clear()
        assert cache.get("k") is None

    def test_mock_cache_is_used_by_cached_module(self):
        """Test that a cached module consults any conforming cache."""
        spec = ModuleSpec(2, "function", 0, 0, 1)
        cache = MockActionCache()
        module = create_module(spec, enable_cache=True, cache=cache)
        key = ((1, 0), (0, 0), (), ())
        X = VectorField.coordinate(2, 0)
        first = module.act_on_monomial(X, key)
        second = module.act_on_monomial(X, key)
        assert first == second
        assert cache.set_calls == 1
        assert cache.get_calls == 2


class TestModuleElementProtocol:
    """Test ModuleElement conformance of operators."""

    def test_diffop_conforms(self):
        """Test that DiffOp supports the protocol operations."""
        spec = ModuleSpec(2, "multivector", 1, 1, 0)
        identity = DiffOp.identity(spec)
        result = _uses_element(identity)
        assert result == identity
        assert not result.is_zero()
        assert result.spec == spec
        assert all(c == 1 for c in result.monomials().values())
