import pytest

from app.kr.root_data import parse_type
from app.trace import Tracer, set_tracer
from app.trace.store import MemoryStore


@pytest.fixture(autouse=True)
def memory_tracer():
    tracer = Tracer(MemoryStore())
    set_tracer(tracer)
    yield tracer
    set_tracer(None)


@pytest.fixture
def c2():
    return parse_type("C2~1")


@pytest.fixture
def a1():
    return parse_type("A1~1")
