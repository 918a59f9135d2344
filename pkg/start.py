"""
启动 GAP 选址求解 HTTP 服务（开发模式，热重载）

用法: python start.py [--port 8000]
"""
import argparse
import os
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent


def main() -> None:
    parser = argparse.ArgumentParser(description="GAP 选址求解服务")
    parser.add_argument('--host', default='0.0.0.0')
    parser.add_argument('--port', type=int, default=int(os.getenv('GAP_PORT', '8000')))
    args = parser.parse_args()

    os.chdir(PROJECT_ROOT)
    sys.path.insert(0, str(PROJECT_ROOT))

    import uvicorn

    print(f"GAP Solver API: http://localhost:{args.port}/docs")
    uvicorn.run("app:app", host=args.host, port=args.port, reload=True)


if __name__ == "__main__":
    main()
