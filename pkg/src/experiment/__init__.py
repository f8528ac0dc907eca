# 실험 실행(CLI) 모듈
