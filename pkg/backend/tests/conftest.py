import numpy as np
import pytest
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker

from topo_sensing.core.init_db import init_db
from topo_sensing.hamiltonians.families import chern_bloch_family, chern_wire_family, ssh_family


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def ssh():
    return ssh_family()


@pytest.fixture
def chern_wire():
    return chern_wire_family()


@pytest.fixture
def chern():
    return chern_bloch_family()


@pytest.fixture
def db_session():
    """Fresh in-memory run ledger per test."""
    engine = create_engine("sqlite://", connect_args={"check_same_thread": False})
    init_db(bind=engine)
    Session = sessionmaker(autocommit=False, autoflush=False, bind=engine)
    db = Session()
    try:
        yield db
    finally:
        db.close()
        engine.dispose()


@pytest.fixture
def results_dir(tmp_path):
    return tmp_path / "results"


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2
