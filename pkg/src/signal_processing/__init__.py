# 신호 처리 및 FOM 계산 모듈
