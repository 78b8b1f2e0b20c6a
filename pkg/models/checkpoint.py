import hashlib
import json
import logging
import os

from models.search import PairResult, SearchHit

logger = logging.getLogger(__name__)

DIGEST_PREFIX = '# digest '


class Checkpoint:
    """Completed (a, b) pairs of one sweep.

    One JSON line per pair, then a trailing `# digest <sha256>` line covering
    the query key and every pair line. A file whose digest does not match is
    discarded and the sweep starts over.
    """

    def __init__(self, path, query_key: str):
        self.path = path
        self.query_key = query_key
        self._hash = None
        self._body_end = 0

    def _new_hash(self):
        return hashlib.sha256(self.query_key.encode('utf-8'))

    def _rewrite(self, lines: list[str]):
        self._hash = self._new_hash()
        with open(self.path, 'w', encoding='utf-8') as f:
            for line in lines:
                f.write(line)
                self._hash.update(line.encode('utf-8'))
            self._body_end = f.tell()
            f.write(f'{DIGEST_PREFIX}{self._hash.hexdigest()}\n')

    def _read_lines(self) -> list[str] | None:
        """Pair lines of an intact checkpoint for this query, else None."""
        with open(self.path, encoding='utf-8') as f:
            lines = f.readlines()
        if not lines or not lines[-1].startswith(DIGEST_PREFIX):
            return None
        body = lines[:-1]
        h = self._new_hash()
        for line in body:
            h.update(line.encode('utf-8'))
        if lines[-1][len(DIGEST_PREFIX):].strip() != h.hexdigest():
            return None
        return body

    def load(self) -> dict[tuple[int, int], list[SearchHit]]:
        """Pairs already done, keyed by (a, b), in completion order.

        The most recently completed pair is dropped so that it is searched again.
        """
        body = None
        if os.path.exists(self.path):
            try:
                body = self._read_lines()
            except (OSError, UnicodeDecodeError) as e:
                logger.warning(f'Cannot read checkpoint {self.path}: {e}')
            if body is None:
                logger.warning(f'Checkpoint {self.path} does not match this sweep, starting over')
        body = body or []

        done = {}
        try:
            for line in body:
                record = json.loads(line)
                pair = (int(record['a']), int(record['b']))
                done[pair] = [SearchHit.from_dict(h) for h in record['hits']]
        except (ValueError, KeyError, TypeError) as e:
            logger.warning(f'Malformed checkpoint line in {self.path}: {e}, starting over')
            done, body = {}, []

        if body:
            body = body[:-1]
            done.pop(next(reversed(done)))
        self._rewrite(body)
        if done:
            logger.info(f'Resuming from {self.path}: {len(done)} pair(s) already done')
        return done

    def record(self, result: PairResult):
        """Append one completed pair and refresh the digest."""
        if self._hash is None:
            self._rewrite([])
        a, b = result.pair
        line = json.dumps({
            'a': str(a),
            'b': str(b),
            'hits': [h.to_dict() for h in result.hits],
            'stats': result.stats,
        }) + '\n'
        self._hash.update(line.encode('utf-8'))
        with open(self.path, 'r+', encoding='utf-8') as f:
            f.seek(self._body_end)
            f.write(line)
            self._body_end = f.tell()
            f.write(f'{DIGEST_PREFIX}{self._hash.hexdigest()}\n')
            f.truncate()
