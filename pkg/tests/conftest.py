import pytest

from nchull import _pykernels
from nchull import kernels


def pytest_report_header(config):
    return f"nchull kernel backend: {kernels.BACKEND}"


BACKENDS = [_pykernels]
if kernels._compiled is not None:
    BACKENDS.append(kernels._compiled)


@pytest.fixture(params=BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def kern(request):
    return request.param
