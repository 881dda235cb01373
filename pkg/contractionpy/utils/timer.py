import sys
import time


def timer(method, fmt=lambda name, t: f'[Timer] {name}: {t * 1000:2.2f} ms', apply=True, name=None,
          stream=None):
    if not apply:
        return method
    label = name if name is not None else method.__name__

    def timed(*args, **kwargs):
        start = time.perf_counter()
        result = method(*args, **kwargs)
        elapse = time.perf_counter() - start
        print(fmt(label, elapse), file=stream if stream is not None else sys.stderr)
        return result

    return timed
